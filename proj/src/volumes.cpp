#include "stgr/volumes.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "stgr/quadrature.hpp"
#include "stgr/rng.hpp"

namespace stgr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;
constexpr double kLogPi = 1.1447298858494001741;
const double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

LogVolume log_sphere_volume(int m) {
    if (m < 1) throw InvalidSpec("log_sphere_volume: m >= 1 required");
    return {kLog2 + 0.5 * m * kLogPi - std::lgamma(0.5 * m)};
}

LogVolume log_ball_volume(int m) {
    if (m < 1) throw InvalidSpec("log_ball_volume: m >= 1 required");
    return {log_sphere_volume(m).value - std::log(static_cast<double>(m))};
}

LogVolume log_vol_stiefel(int k, int n) {
    if (k < 1 || n < k) throw InvalidSpec("log_vol_stiefel: need 1 <= k <= n");
    double sum = 0.0;
    for (int i = n - k + 1; i <= n; ++i)
        sum += kLog2 + i * kLogPi - std::lgamma(static_cast<double>(i));
    return {sum};
}

LogVolume log_vol_grassmann(int k, int n) {
    if (k < 1 || 2 * k > n) throw InvalidSpec("log_vol_grassmann: need 1 <= k <= n/2");
    return {log_vol_stiefel(k, n).value - log_vol_stiefel(k, k).value};
}

LogVolume ball_volume_curved(const BallModel& model, double r) {
    const int d = model.dimension;
    if (d < 1) throw InvalidSpec("ball_volume_curved: dimension >= 1 required");
    if (model.kappa < 0.0) throw InvalidSpec("ball_volume_curved: kappa must be >= 0");
    if (r < 0.0) throw DomainError("ball_volume_curved: negative radius");
    if (r == 0.0) return {kNegInf};
    if (model.kappa == 0.0)
        return {log_ball_volume(d).value + d * std::log(r)};

    const double sk = std::sqrt(model.kappa);
    if (r > kPi / sk + 1e-12)
        throw DomainError("ball_volume_curved: radius beyond pi/sqrt(kappa)");
    const double phi = std::min(r * sk, kPi);
    const int m = d - 1;
    if (m == 0)
        return {std::log(2.0 * r)};
    // J = int_0^phi sin(u)^m du, factored in log space around the peak so
    // that huge m stays representable.
    const double peak = m * std::log(std::sin(std::min(phi, 0.5 * kPi)));
    auto scaled = [&](double u) -> double {
        double s = std::sin(u);
        if (s <= 0.0) return 0.0;
        return std::exp(m * std::log(s) - peak);
    };
    double integral = integrate_adaptive(scaled, 0.0, phi, 1e-12);
    return {-0.5 * d * std::log(model.kappa) + log_sphere_volume(d).value + peak +
            std::log(integral)};
}

namespace {

// Principal-angle density on the open cube, without normalization:
// prod sin^{2(n-2k)+1} cos * prod_{j<l} (sin^2 - sin^2)^2.
double angle_density(const std::vector<double>& theta, int k, int n) {
    const int p = 2 * (n - 2 * k) + 1;
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        double s = std::sin(theta[i]);
        out *= std::pow(s, p) * std::cos(theta[i]);
    }
    for (int j = 0; j < k; ++j)
        for (int l = j + 1; l < k; ++l) {
            double sj = std::sin(theta[j]), sl = std::sin(theta[l]);
            double diff = sj * sj - sl * sl;
            out *= diff * diff;
        }
    return out;
}

// log of the constant mapping the cube integral to a volume:
// vol B = exp(log_const) * int_{cube cut by |theta| <= r} density.
double log_cube_constant(int k, int n) {
    double sum = log_vol_grassmann(k, n).value - std::lgamma(k + 1.0) + k * kLog2;
    for (int i = 1; i <= k; ++i)
        sum += std::lgamma(static_cast<double>(n - i + 1)) -
               2.0 * std::lgamma(static_cast<double>(i)) -
               std::lgamma(static_cast<double>(n - k - i + 1));
    return sum;
}

// Iterated adaptive quadrature over {theta in [0,pi/2]^k, sum theta^2 <= r2}.
// Each level clips its own range analytically, so the radial cut never shows
// up as a discontinuous integrand.
double nested_integral(int k, int n, std::vector<double>& theta, int level, double limit2,
                       double rel_tol) {
    if (limit2 <= 0.0) return 0.0;
    double hi = std::min(0.5 * kPi, std::sqrt(limit2));
    std::function<double(double)> f = [&](double t) -> double {
        theta[level] = t;
        if (level == k - 1) return angle_density(theta, k, n);
        return nested_integral(k, n, theta, level + 1, limit2 - t * t, rel_tol * 0.2);
    };
    return integrate_adaptive(f, 0.0, hi, rel_tol);
}

ExactBallResult exact_ball_deterministic(int k, int n, double r) {
    const double rel_tol = 1e-9;
    std::vector<double> theta(static_cast<std::size_t>(k), 0.0);
    double integral = nested_integral(k, n, theta, 0, r * r, rel_tol);
    if (integral <= 0.0) return {{kNegInf}, 0.0};
    return {{log_cube_constant(k, n) + std::log(integral)}, rel_tol};
}

ExactBallResult exact_ball_monte_carlo(int k, int n, double r, std::uint64_t seed,
                                       std::int64_t samples, Exec exec) {
    if (samples < 2) throw InvalidSpec("exact_grassmann_ball: need >= 2 samples");
    const double r2 = r * r;
    const double half_pi = 0.5 * kPi;
    constexpr std::int64_t kBatch = 1 << 16;
    const std::int64_t batches = (samples + kBatch - 1) / kBatch;
    std::vector<double> sum1(static_cast<std::size_t>(batches), 0.0);
    std::vector<double> sum2(static_cast<std::size_t>(batches), 0.0);

    auto run_batch = [&](std::int64_t b) {
        std::int64_t lo = b * kBatch;
        std::int64_t hi = std::min(samples, lo + kBatch);
        std::vector<double> theta(static_cast<std::size_t>(k));
        double s1 = 0.0, s2 = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
            double norm2 = 0.0;
            for (int j = 0; j < k; ++j) {
                theta[static_cast<std::size_t>(j)] = half_pi * rng.uniform();
                norm2 += theta[static_cast<std::size_t>(j)] * theta[static_cast<std::size_t>(j)];
            }
            if (norm2 > r2) continue;
            double v = angle_density(theta, k, n);
            s1 += v;
            s2 += v * v;
        }
        sum1[static_cast<std::size_t>(b)] = s1;
        sum2[static_cast<std::size_t>(b)] = s2;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < batches; ++b) run_batch(b);
    } else {
        for (std::int64_t b = 0; b < batches; ++b) run_batch(b);
    }

    // Fixed-order reduction keeps the result identical across thread counts.
    double s1 = 0.0, s2 = 0.0;
    for (std::int64_t b = 0; b < batches; ++b) {
        s1 += sum1[static_cast<std::size_t>(b)];
        s2 += sum2[static_cast<std::size_t>(b)];
    }
    const double nd = static_cast<double>(samples);
    const double mean = s1 / nd;
    if (mean <= 0.0) return {{kNegInf}, 1.0};
    const double var = std::max(0.0, s2 / nd - mean * mean);
    const double rel_se = std::sqrt(var / nd) / mean;
    const double log_cube_vol = k * std::log(half_pi);
    return {{log_cube_constant(k, n) + log_cube_vol + std::log(mean)}, rel_se};
}

} // namespace

ExactBallResult exact_grassmann_ball(int k, int n, double r, BallMethod method,
                                     std::uint64_t seed, std::int64_t mc_samples,
                                     Exec exec) {
    if (k < 1 || 2 * k > n) throw InvalidSpec("exact_grassmann_ball: need 1 <= k <= n/2");
    const double r_max = std::sqrt(static_cast<double>(k)) * 0.5 * kPi;
    if (r < 0.0 || r > r_max + 1e-12)
        throw InvalidSpec("exact_grassmann_ball: radius outside [0, sqrt(k) pi/2]");
    if (r == 0.0) return {{kNegInf}, 0.0};
    if (method == BallMethod::Deterministic) {
        if (k > 3)
            throw InvalidSpec("exact_grassmann_ball: deterministic mode is limited to k <= 3");
        return exact_ball_deterministic(k, n, r);
    }
    return exact_ball_monte_carlo(k, n, r, seed, mc_samples, exec);
}

} // namespace stgr
