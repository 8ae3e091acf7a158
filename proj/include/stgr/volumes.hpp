#ifndef STGR_VOLUMES_HPP
#define STGR_VOLUMES_HPP

#include <cstdint>

#include "stgr/parallel.hpp"
#include "stgr/types.hpp"

namespace stgr {

/// Natural logarithm of a volume. All volume arithmetic stays in log space;
/// raw values overflow/underflow long before the table sizes of interest.
struct LogVolume {
    double value;
};

/// Comparison ball model: constant curvature kappa >= 0 in real dimension D.
/// kappa = 0 is the flat ball; kappa > 0 restricts radii to [0, pi/sqrt(kappa)].
struct BallModel {
    double kappa;
    int dimension;
};

/// log |S^{m-1}| = log 2 + (m/2) log pi - lgamma(m/2).
LogVolume log_sphere_volume(int m);

/// log |B^m| = log |S^{m-1}| - log m.
LogVolume log_ball_volume(int m);

/// log vol V_{k,n} = sum_{i=n-k+1}^{n} [log 2 + i log pi - lgamma(i)].
LogVolume log_vol_stiefel(int k, int n);

/// log vol G_{k,n} = log vol V_{k,n} - log vol U(k); requires k <= n/2.
LogVolume log_vol_grassmann(int k, int n);

/// Volume of the geodesic ball of radius r in the constant-curvature model.
/// kappa = 0 is closed form; kappa > 0 goes through adaptive quadrature of
/// sin(sqrt(kappa) t)^{D-1}, accumulated in log space.
LogVolume ball_volume_curved(const BallModel& model, double r);

enum class BallMethod { Deterministic, MonteCarlo };

struct ExactBallResult {
    LogVolume volume;
    /// Relative error estimate: quadrature boundary/refinement bound for
    /// Deterministic, relative standard error for MonteCarlo.
    double error_estimate;
};

/// Exact geodesic-ball volume on the Grassmann manifold via the principal
/// angle density integrated over [0, pi/2]^k cut by |theta|_2 <= r.
/// Deterministic tensor quadrature is limited to k <= 3; larger k must use
/// MonteCarlo. Radius domain is [0, sqrt(k) pi/2].
ExactBallResult exact_grassmann_ball(int k, int n, double r, BallMethod method,
                                     std::uint64_t seed = 0,
                                     std::int64_t mc_samples = 1000000,
                                     Exec exec = Exec::Parallel);

} // namespace stgr

#endif
