#ifndef STGR_EQUIVALENCE_HPP
#define STGR_EQUIVALENCE_HPP

#include <array>
#include <cstdint>

#include "stgr/manifold.hpp"
#include "stgr/parallel.hpp"
#include "stgr/types.hpp"

namespace stgr {

/// Parameters of the commutator-series bound kappa(delta).
struct KappaSeriesParams {
    double delta;
    int r_max = 100000;
    double tol = 1e-12;
};

/// kappa <= sum_{r>=1} (g^r + f^r) / (r+1) with g = (e^{4d}-1)e^{2d} and
/// f = (e^{2d}-1)e^{4d}. Throws Divergent when either base reaches 1,
/// NotConverged when the geometric tail bound is still above tol at r_max.
double kappa_series(const KappaSeriesParams& params);

/// Largest delta whose series converges with kappa(delta) < 1, found by
/// bisection on [0, 0.25] to bracket width 1e-10.
double delta_threshold(double tol);

/// The two published forms of alpha(kappa); the Lemma form pi/(2(1-kappa))
/// is the default, the closing-paragraph form pi/(sqrt(2)(1-kappa)) is kept
/// selectable because the source states both without reconciling them.
enum class AlphaForm { Lemma, ClosingRemark };
double alpha_from_kappa(double kappa, AlphaForm form = AlphaForm::Lemma);

/// Factorization exp(X) = exp(Z) diag(v, W) with Z the Grassmann-type
/// tangent reaching the same subspace and v the residual U(k) phase.
/// kappa_emp = |log(v) - A|_F / |A|_F measures how far the phase strays
/// from the A block (0/0 treated as 0).
struct PhaseDecomposition {
    HorizontalTangent z_part;
    Matrix phase;      // v, k x k unitary
    Matrix a_tilde;    // log of v, skew-Hermitian
    Matrix correction; // a_tilde - A
    double kappa_emp;
};
PhaseDecomposition phase_decompose(const HorizontalTangent& x);

/// Histogram of 1 - kappa_emp over `samples` random tangents with embedded
/// Frobenius norm delta; 20 equal bins on [0, 1.2], out-of-range values
/// clipped into the end bins so counts always sum to samples.
struct KappaHistogram {
    static constexpr int kBins = 20;
    static constexpr double kLo = 0.0;
    static constexpr double kHi = 1.2;
    double mean_one_minus_kappa;
    double min_value;
    double max_value;
    std::array<std::int64_t, kBins> bin_counts;
    std::int64_t samples;
    double bin_left(int i) const { return kLo + (kHi - kLo) * i / kBins; }
    double bin_right(int i) const { return kLo + (kHi - kLo) * (i + 1) / kBins; }
};
KappaHistogram kappa_histogram(const SpaceSpec& space, double delta, std::int64_t samples,
                               std::uint64_t seed, Exec exec = Exec::Parallel);

/// Samples point pairs from tangents with tangent_norm <= max_norm and
/// counts violations (beyond 1e-10) of the chordal/geodesic sandwich that
/// applies to the space: d/sqrt(2) <= r on Stiefel (plus
/// r <= pi d/(2 sqrt 2) when k = n), d <= r <= (pi/2) d on Grassmann.
struct SandwichReport {
    std::int64_t violations_lower;
    std::int64_t violations_upper;
    double worst_ratio; // max over samples of r/d, ignoring d = 0
    std::int64_t samples;
};
SandwichReport verify_sandwich(const SpaceSpec& space, std::int64_t samples,
                               std::uint64_t seed, double max_norm = 1.0,
                               Exec exec = Exec::Parallel);

} // namespace stgr

#endif
