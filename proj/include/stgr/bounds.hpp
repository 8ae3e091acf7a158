#ifndef STGR_BOUNDS_HPP
#define STGR_BOUNDS_HPP

#include <optional>

#include "stgr/types.hpp"
#include "stgr/volumes.hpp"

namespace stgr {

/// A bound query: space plus rate R = log2|C| / n in bits per time step.
struct BoundQuery {
    SpaceSpec space;
    double rate;
    BoundQuery(SpaceSpec s, double r) : space(s), rate(r) {
        if (!(rate > 0.0)) throw InvalidSpec("BoundQuery: rate must be positive");
    }
};

/// Metric equivalence constants beta d <= r <= alpha d plus the power
/// scaling factor mu. The Stiefel alpha default pi/(2*0.9) is an empirical
/// value, not a proven one; `alpha_rigorous` records that.
struct EquivConstants {
    double alpha;
    double beta;
    double mu;
    bool alpha_rigorous;

    static EquivConstants defaults(const SpaceSpec& space);
};

int dimension(const SpaceSpec& space);

/// Total volume of the space (log).
LogVolume log_total_volume(const SpaceSpec& space);

/// Curvature cap used by the Hamming side: 2 for U(k), 5/2 for Stiefel
/// k < n, 4 for Grassmann.
double kappa_bar_default(const SpaceSpec& space);

/// Gilbert-Varshamov geodesic lower bound
/// r = exp((-nR log 2 + log vol M - log|B^D|) / D).
double gv_lower(const BoundQuery& query);

/// Hamming geodesic upper bound: twice the radius solving
/// v^kappa(rho) = vol M / 2^{nR} on [0, pi/sqrt(kappa)]. Empty when the
/// target volume exceeds the comparison space, mirroring the unsolvable
/// high-rate cases.
std::optional<double> hamming_upper(const BoundQuery& query, double kappa_bar);

/// The closed-form floor (1/2)^{nR/D} under gv_lower.
double theorem_floor(const BoundQuery& query);

/// Large-n limit of gv_lower: sqrt(k / 2^{R/k}).
double asymptotic_limit(int k, double rate);

/// Asymptotic Grassmann minimal-distance bounds of Barg and Nogin for
/// geodesic and chordal distance.
struct BargNogin {
    double geodesic_lo;
    double geodesic_hi;
    double chordal_lo;
    double chordal_hi;
};
BargNogin barg_nogin(int k, double rate);

/// b = (vol M / |B^D|)^{1/D}, reported in log form as well. Defined for
/// Stiefel n >= k and Grassmann n >= k+1 (the volume quotient formula is
/// valid beyond the k <= n/2 sampling convention).
struct BFactor {
    double log_B;
    double b;
};
BFactor b_factor(Family family, int k, int n);

/// Coding-space translations: d_lower = sqrt(mu n/k) r_lower / alpha and
/// d_upper = sqrt(mu n/k) r_upper / beta (when feasible).
struct CodingBounds {
    double lower;
    std::optional<double> upper;
};
CodingBounds coding_bounds(const BoundQuery& query, const EquivConstants& constants);

/// Everything above bundled for one (space, R) cell.
struct BoundReport {
    int D;
    LogVolume log_vol;
    double gv_lower;
    std::optional<double> hamming_upper;
    double theorem_floor;
    double coding_lower;
    std::optional<double> coding_upper;
};
BoundReport bound_report(const BoundQuery& query,
                         std::optional<double> kappa_bar_override = std::nullopt,
                         std::optional<EquivConstants> constants_override = std::nullopt);

} // namespace stgr

#endif
