#ifndef STGR_PARALLEL_HPP
#define STGR_PARALLEL_HPP

namespace stgr {

/// Every sampling kernel exists in two flavours: an OpenMP-parallel one and
/// a serial reference. Both produce bitwise-identical results (per-sample
/// seeds are derived from the sample index and reductions run in a fixed
/// order); the serial path is kept for testing and as the fallback when the
/// build has no OpenMP.
enum class Exec { Serial, Parallel };

} // namespace stgr

#endif
