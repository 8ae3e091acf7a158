#include "stgr/packing.hpp"

#include <cmath>

#include "json.hpp"

#include "stgr/bounds.hpp"
#include "stgr/volumes.hpp"

namespace stgr {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

} // namespace

const char* metric_name(PackingMetric m) {
    switch (m) {
        case PackingMetric::GeodesicGrassmann: return "geodesic-grassmann";
        case PackingMetric::ChordalStiefel: return "chordal-stiefel";
        case PackingMetric::ChordalGrassmann: return "chordal-grassmann";
    }
    return "?";
}

PackingMetric metric_from_name(const std::string& name) {
    if (name == "geodesic-grassmann" || name == "geodesic")
        return PackingMetric::GeodesicGrassmann;
    if (name == "chordal-stiefel" || name == "chordal")
        return PackingMetric::ChordalStiefel;
    if (name == "chordal-grassmann") return PackingMetric::ChordalGrassmann;
    throw InvalidSpec("unknown metric: " + name);
}

double point_distance(const SpaceSpec& space, PackingMetric metric,
                      const StiefelPoint& a, const StiefelPoint& b) {
    switch (metric) {
        case PackingMetric::ChordalStiefel:
            return chordal_stiefel(a, b);
        case PackingMetric::GeodesicGrassmann:
            return principal_angles(a, b).norm2();
        case PackingMetric::ChordalGrassmann: {
            PrincipalAngles theta = principal_angles(a, b);
            return theta.angles.array().sin().matrix().norm();
        }
    }
    throw InvalidSpec("point_distance: bad metric");
    (void)space;
}

double min_distance(const Codebook& cb) {
    const int m = static_cast<int>(cb.points.size());
    if (m < 2) throw TooFewPoints("min_distance: need at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            best = std::min(best, point_distance(cb.space, cb.metric, cb.points[i],
                                                 cb.points[j]));
    return best;
}

Codebook greedy_pack(const SpaceSpec& space, PackingMetric metric,
                     const GreedyConfig& config) {
    if (config.rejection_cap < 1)
        throw InvalidSpec("greedy_pack: rejection_cap must be >= 1");
    if (!(config.target_distance > 0.0))
        throw InvalidSpec("greedy_pack: target_distance must be positive");
    if (space.family == Family::Stiefel && metric == PackingMetric::GeodesicGrassmann)
        throw InvalidSpec("greedy_pack: Grassmann metric on a Stiefel space");

    Codebook cb{space, metric, {}};
    int consecutive_rejections = 0;
    std::uint64_t draw = 0;
    // Acceptance decisions are strictly sequential in draw order; the
    // per-draw seed split keeps the stream independent of the history.
    while (consecutive_rejections < config.rejection_cap) {
        StiefelPoint candidate = haar_stiefel(space, derive_seed(config.seed, draw++));
        bool ok = true;
        for (const StiefelPoint& p : cb.points) {
            if (point_distance(space, metric, candidate, p) <
                config.target_distance - 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok) {
            cb.points.push_back(std::move(candidate));
            consecutive_rejections = 0;
        } else {
            ++consecutive_rejections;
        }
    }
    return cb;
}

HammingCheck check_hamming(const Codebook& cb, double kappa_bar) {
    const int m = static_cast<int>(cb.points.size());
    if (m < 2) throw TooFewPoints("check_hamming: need at least two points");
    const double d0 = min_distance(cb);
    // Chordal Stiefel distances convert to geodesic radii through
    // r >= d/sqrt(2); Grassmann metrics have beta = 1.
    const double radius = cb.metric == PackingMetric::ChordalStiefel
                              ? d0 / (2.0 * std::sqrt(2.0))
                              : 0.5 * d0;
    const BallModel model{kappa_bar, dimension(cb.space)};
    const double rho_max = kPi / std::sqrt(kappa_bar);
    HammingCheck out{};
    out.lhs_log = ball_volume_curved(model, std::min(radius, rho_max)).value +
                  std::log(static_cast<double>(m));
    out.rhs_log = log_total_volume(cb.space).value;
    out.passes = out.lhs_log <= out.rhs_log + 1e-9;
    return out;
}

GvCheck check_gv(const SpaceSpec& space, PackingMetric metric, double d0,
                 int achieved_size) {
    if (!(d0 > 0.0)) throw InvalidSpec("check_gv: d0 must be positive");
    if (achieved_size < 1) throw InvalidSpec("check_gv: achieved_size must be >= 1");
    const double r0 =
        metric == PackingMetric::ChordalStiefel ? d0 / std::sqrt(2.0) : d0;
    const int d = dimension(space);
    const double log_ratio =
        log_total_volume(space).value - ball_volume_curved({0.0, d}, r0).value;
    GvCheck out{};
    out.gv_floor = std::max<long long>(
        1, static_cast<long long>(std::floor(std::exp(log_ratio))));
    if (space.family == Family::Grassmann && space.k == 1) {
        // Exact ball volume vol * sin^{2(n-1)} r gives a sharper floor.
        const double log_exact_ratio =
            -2.0 * (space.n - 1) * std::log(std::sin(std::min(r0, 0.5 * kPi)));
        out.exact_floor = std::max<long long>(
            1, static_cast<long long>(std::floor(std::exp(log_exact_ratio))));
    }
    out.passes = achieved_size >= std::min<long long>(out.gv_floor, 1);
    return out;
}

double rate(const Codebook& cb) {
    if (cb.points.empty()) throw TooFewPoints("rate: empty codebook");
    return std::log2(static_cast<double>(cb.points.size())) / cb.space.n;
}

std::string codebook_to_json(const Codebook& cb) {
    json points = json::array();
    for (const StiefelPoint& p : cb.points) {
        json rows = json::array();
        for (int i = 0; i < p.frame.rows(); ++i)
            for (int j = 0; j < p.frame.cols(); ++j)
                rows.push_back({p.frame(i, j).real(), p.frame(i, j).imag()});
        points.push_back(std::move(rows));
    }
    json out{{"family", family_name(cb.space.family)},
             {"k", cb.space.k},
             {"n", cb.space.n},
             {"metric", metric_name(cb.metric)},
             {"points", std::move(points)}};
    return out.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string& text) {
    json in = json::parse(text);
    const std::string fam = in.at("family").get<std::string>();
    Family family;
    if (fam == "stiefel")
        family = Family::Stiefel;
    else if (fam == "grassmann")
        family = Family::Grassmann;
    else
        throw InvalidSpec("codebook_from_json: unknown family " + fam);
    SpaceSpec space(family, in.at("k").get<int>(), in.at("n").get<int>());
    Codebook cb{space, metric_from_name(in.at("metric").get<std::string>()), {}};
    for (const json& entry : in.at("points")) {
        if (static_cast<int>(entry.size()) != space.n * space.k)
            throw InvalidSpec("codebook_from_json: point entry count mismatch");
        Matrix frame(space.n, space.k);
        int idx = 0;
        for (int i = 0; i < space.n; ++i)
            for (int j = 0; j < space.k; ++j) {
                const json& z = entry.at(idx++);
                frame(i, j) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
            }
        cb.points.emplace_back(std::move(frame));
    }
    return cb;
}

} // namespace stgr
