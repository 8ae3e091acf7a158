#include "stgr/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace stgr {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double kappa_series(const KappaSeriesParams& params) {
    if (!(params.delta > 0.0)) throw InvalidSpec("kappa_series: delta must be positive");
    if (params.r_max < 1 || !(params.tol > 0.0))
        throw InvalidSpec("kappa_series: r_max >= 1 and tol > 0 required");
    const double d = params.delta;
    const double g = (std::exp(4.0 * d) - 1.0) * std::exp(2.0 * d);
    const double f = (std::exp(2.0 * d) - 1.0) * std::exp(4.0 * d);
    if (g >= 1.0 || f >= 1.0)
        throw Divergent("kappa_series: geometric base >= 1 at this delta");
    double sum = 0.0;
    double gp = 1.0, fp = 1.0;
    for (int r = 1; r <= params.r_max; ++r) {
        gp *= g;
        fp *= f;
        sum += (gp + fp) / (r + 1);
        // Tail after r is below sum_{s>r} (g^s + f^s)/(r+2).
        double tail = (gp * g / (1.0 - g) + fp * f / (1.0 - f)) / (r + 2);
        if (tail < params.tol) return sum;
    }
    throw NotConverged("kappa_series: tail above tol at r_max");
}

double delta_threshold(double tol) {
    if (!(tol > 0.0)) throw InvalidSpec("delta_threshold: tol must be positive");
    // The predicate "series converges and kappa < 1" is monotone in delta;
    // it holds at small delta and fails by divergence at 0.2 already.
    auto ok = [&](double d) {
        try {
            return kappa_series({d, 100000, tol}) < 1.0;
        } catch (const Divergent&) {
            return false;
        }
    };
    double lo = 0.0, hi = 0.25;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

double alpha_from_kappa(double kappa, AlphaForm form) {
    if (!(kappa >= 0.0) || kappa >= 1.0)
        throw DomainError("alpha_from_kappa: kappa must lie in [0, 1)");
    double denom = form == AlphaForm::Lemma ? 2.0 : std::sqrt(2.0);
    return kPi / (denom * (1.0 - kappa));
}

PhaseDecomposition phase_decompose(const HorizontalTangent& x) {
    const SpaceSpec& spec = x.space;
    if (spec.family != Family::Stiefel)
        throw InvalidSpec("phase_decompose: Stiefel tangents only");
    if (!(spec.k == spec.n || 2 * spec.k <= spec.n))
        throw InvalidSpec("phase_decompose: need k = n or k <= n/2");
    const int k = spec.k, n = spec.n;

    const Matrix big = exp_skew(embed_tangent(x));
    // Z reaches the subspace spanned by the endpoint frame; what remains of
    // exp(-Z) exp(X) is block diagonal with the U(k) phase on top.
    HorizontalTangent z = grassmann_log_canonical(spec, big.leftCols(k));
    const Matrix m = exp_skew(-embed_tangent(z)) * big;

    double off = 0.0;
    if (n > k) {
        off = std::sqrt(m.bottomLeftCorner(n - k, k).squaredNorm() +
                        m.topRightCorner(k, n - k).squaredNorm());
    }
    if (off > 1e-6)
        throw DecompositionResidual("phase_decompose: off-diagonal residual " +
                                    std::to_string(off));

    PhaseDecomposition out{std::move(z), m.topLeftCorner(k, k), Matrix(), Matrix(), 0.0};
    out.a_tilde = log_unitary(out.phase);
    out.correction = out.a_tilde - x.a_block;
    const double na = x.a_block.norm();
    out.kappa_emp = na < 1e-14 ? 0.0 : out.correction.norm() / na;
    return out;
}

KappaHistogram kappa_histogram(const SpaceSpec& space, double delta, std::int64_t samples,
                               std::uint64_t seed, Exec exec) {
    if (space.family != Family::Stiefel)
        throw InvalidSpec("kappa_histogram: Stiefel family only");
    if (samples < 1) throw InvalidSpec("kappa_histogram: samples >= 1 required");
    if (!(delta > 0.0)) throw InvalidSpec("kappa_histogram: delta must be positive");

    std::vector<double> values(static_cast<std::size_t>(samples));
    // delta is the Frobenius norm of the embedded tangent; the geodesic
    // norm is smaller by sqrt(2).
    const double target = delta / std::sqrt(2.0);
    auto body = [&](std::int64_t i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        HorizontalTangent x = random_horizontal(space, target, rng);
        values[static_cast<std::size_t>(i)] = 1.0 - phase_decompose(x).kappa_emp;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    }

    KappaHistogram hist{};
    hist.samples = samples;
    hist.bin_counts.fill(0);
    hist.min_value = values[0];
    hist.max_value = values[0];
    double sum = 0.0;
    const double width = (KappaHistogram::kHi - KappaHistogram::kLo) / KappaHistogram::kBins;
    for (double v : values) {
        sum += v;
        hist.min_value = std::min(hist.min_value, v);
        hist.max_value = std::max(hist.max_value, v);
        int bin = static_cast<int>(std::floor((v - KappaHistogram::kLo) / width));
        bin = std::clamp(bin, 0, KappaHistogram::kBins - 1);
        ++hist.bin_counts[static_cast<std::size_t>(bin)];
    }
    hist.mean_one_minus_kappa = sum / static_cast<double>(samples);
    return hist;
}

SandwichReport verify_sandwich(const SpaceSpec& space, std::int64_t samples,
                               std::uint64_t seed, double max_norm, Exec exec) {
    if (samples < 1) throw InvalidSpec("verify_sandwich: samples >= 1 required");
    if (!(max_norm > 0.0)) throw InvalidSpec("verify_sandwich: max_norm must be positive");
    constexpr double kTol = 1e-10;
    const double upper_unitary = kPi / (2.0 * std::sqrt(2.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::vector<std::uint8_t> lower_bad(static_cast<std::size_t>(samples), 0);
    std::vector<std::uint8_t> upper_bad(static_cast<std::size_t>(samples), 0);
    std::vector<double> ratios(static_cast<std::size_t>(samples), 0.0);

    auto body = [&](std::int64_t i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        StiefelPoint base = haar_stiefel(space, rng.next_u64());
        double norm = max_norm * rng.uniform();
        HorizontalTangent t = random_horizontal(space, norm, rng);
        StiefelPoint endpoint = exp_point(base, t);
        const std::size_t slot = static_cast<std::size_t>(i);
        if (space.family == Family::Grassmann) {
            GrassmannPoint p(std::move(base)), q(std::move(endpoint));
            double d = chordal_grassmann(p, q);
            double r = geodesic_grassmann(p, q);
            if (d > r + kTol) lower_bad[slot] = 1;
            if (r > 0.5 * kPi * d + kTol) upper_bad[slot] = 1;
            if (d > 0.0) ratios[slot] = r / d;
        } else {
            double d = chordal_stiefel(base, endpoint);
            double r = tangent_norm(t);
            if (d * inv_sqrt2 > r + kTol) lower_bad[slot] = 1;
            if (space.unitary_group() && r > upper_unitary * d + kTol) upper_bad[slot] = 1;
            if (d > 0.0) ratios[slot] = r / d;
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    }

    SandwichReport report{0, 0, 0.0, samples};
    for (std::int64_t i = 0; i < samples; ++i) {
        report.violations_lower += lower_bad[static_cast<std::size_t>(i)];
        report.violations_upper += upper_bad[static_cast<std::size_t>(i)];
        report.worst_ratio = std::max(report.worst_ratio, ratios[static_cast<std::size_t>(i)]);
    }
    return report;
}

} // namespace stgr
