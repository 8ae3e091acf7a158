#include "stgr/bounds.hpp"

#include <cmath>

namespace stgr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

double target_log_volume(const BoundQuery& q) {
    return log_total_volume(q.space).value - q.space.n * q.rate * kLog2;
}

} // namespace

EquivConstants EquivConstants::defaults(const SpaceSpec& space) {
    if (space.family == Family::Grassmann)
        return {0.5 * kPi, 1.0, 0.5, true};
    if (space.unitary_group())
        return {kPi / (2.0 * std::sqrt(2.0)), 1.0 / std::sqrt(2.0), 1.0, true};
    // Empirical alpha for the rectangular Stiefel case; only existence is
    // proven, the 0.9 comes from simulation.
    return {kPi / (2.0 * 0.9), 1.0 / std::sqrt(2.0), 1.0, false};
}

int dimension(const SpaceSpec& space) {
    return space.family == Family::Stiefel ? space.k * (2 * space.n - space.k)
                                           : 2 * space.k * (space.n - space.k);
}

LogVolume log_total_volume(const SpaceSpec& space) {
    return space.family == Family::Stiefel ? log_vol_stiefel(space.k, space.n)
                                           : log_vol_grassmann(space.k, space.n);
}

double kappa_bar_default(const SpaceSpec& space) {
    if (space.family == Family::Grassmann) return 4.0;
    return space.unitary_group() ? 2.0 : 2.5;
}

double gv_lower(const BoundQuery& query) {
    const int d = dimension(query.space);
    return std::exp((target_log_volume(query) - log_ball_volume(d).value) / d);
}

std::optional<double> hamming_upper(const BoundQuery& query, double kappa_bar) {
    if (!(kappa_bar > 0.0)) throw InvalidSpec("hamming_upper: kappa_bar must be positive");
    const BallModel model{kappa_bar, dimension(query.space)};
    const double target = target_log_volume(query);
    const double rho_max = kPi / std::sqrt(kappa_bar);
    if (target > ball_volume_curved(model, rho_max).value)
        return std::nullopt; // ball volume never reaches the target: no solution
    // Monotone objective; plain bisection to 1e-10 relative.
    double lo = 0.0, hi = rho_max;
    int it = 0;
    while (hi - lo > 1e-10 * hi) {
        if (++it > 200) throw NotConverged("hamming_upper: bisection cap reached");
        double mid = 0.5 * (lo + hi);
        if (ball_volume_curved(model, mid).value < target)
            lo = mid;
        else
            hi = mid;
    }
    return lo + hi; // twice the bracket midpoint
}

double theorem_floor(const BoundQuery& query) {
    return std::exp2(-query.space.n * query.rate / dimension(query.space));
}

double asymptotic_limit(int k, double rate) {
    if (k < 1 || !(rate > 0.0)) throw InvalidSpec("asymptotic_limit: k >= 1, rate > 0");
    return std::sqrt(k * std::exp2(-rate / k));
}

BargNogin barg_nogin(int k, double rate) {
    if (k < 1 || !(rate > 0.0)) throw InvalidSpec("barg_nogin: k >= 1, rate > 0");
    const double arg = std::exp2(-rate / (2.0 * k));
    if (arg > 1.0) throw DomainError("barg_nogin: arcsin argument above 1");
    const double sk = std::sqrt(static_cast<double>(k));
    const double asn = std::asin(arg);
    const double q = std::exp2(-rate / k);
    const double one_minus = 1.0 - q;
    return {sk * asn, 2.0 * sk * asn, std::sqrt(k * q),
            std::sqrt(2.0 * k * (1.0 - one_minus * one_minus))};
}

BFactor b_factor(Family family, int k, int n) {
    double log_vol;
    int d;
    if (family == Family::Stiefel) {
        if (k < 1 || n < k) throw InvalidSpec("b_factor: Stiefel needs n >= k >= 1");
        log_vol = log_vol_stiefel(k, n).value;
        d = k * (2 * n - k);
    } else {
        if (k < 1 || n < k + 1) throw InvalidSpec("b_factor: Grassmann needs n >= k+1");
        // Quotient formula, valid for every k < n (not only the k <= n/2
        // sampling convention; the volume is symmetric under complements).
        log_vol = log_vol_stiefel(k, n).value - log_vol_stiefel(k, k).value;
        d = 2 * k * (n - k);
    }
    double log_b_big = log_vol - log_ball_volume(d).value;
    return {log_b_big, std::exp(log_b_big / d)};
}

CodingBounds coding_bounds(const BoundQuery& query, const EquivConstants& constants) {
    if (!(constants.alpha > 0.0) || !(constants.beta > 0.0) ||
        constants.beta > constants.alpha + 1e-15)
        throw InvalidSpec("coding_bounds: need 0 < beta <= alpha");
    const double scale =
        std::sqrt(constants.mu * query.space.n / static_cast<double>(query.space.k));
    CodingBounds out{scale * gv_lower(query) / constants.alpha, std::nullopt};
    auto upper = hamming_upper(query, kappa_bar_default(query.space));
    if (upper) out.upper = scale * *upper / constants.beta;
    return out;
}

BoundReport bound_report(const BoundQuery& query, std::optional<double> kappa_bar_override,
                         std::optional<EquivConstants> constants_override) {
    const double kappa_bar = kappa_bar_override.value_or(kappa_bar_default(query.space));
    const EquivConstants constants =
        constants_override.value_or(EquivConstants::defaults(query.space));
    BoundReport report{dimension(query.space),
                       log_total_volume(query.space),
                       gv_lower(query),
                       hamming_upper(query, kappa_bar),
                       theorem_floor(query),
                       0.0,
                       std::nullopt};
    const double scale =
        std::sqrt(constants.mu * query.space.n / static_cast<double>(query.space.k));
    report.coding_lower = scale * report.gv_lower / constants.alpha;
    if (report.hamming_upper)
        report.coding_upper = scale * *report.hamming_upper / constants.beta;
    return report;
}

} // namespace stgr
