#ifndef STGR_PACKING_HPP
#define STGR_PACKING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stgr/manifold.hpp"
#include "stgr/types.hpp"

namespace stgr {

enum class PackingMetric { GeodesicGrassmann, ChordalStiefel, ChordalGrassmann };

const char* metric_name(PackingMetric m);
PackingMetric metric_from_name(const std::string& name);

/// A packing: accepted frames plus the metric they were packed under.
/// Grassmann codebooks store representing frames.
struct Codebook {
    SpaceSpec space;
    PackingMetric metric;
    std::vector<StiefelPoint> points;
};

struct GreedyConfig {
    std::uint64_t seed = 0;
    int rejection_cap = 10000; // consecutive rejections before declaring maximal
    double target_distance = 0.0;
};

double point_distance(const SpaceSpec& space, PackingMetric metric,
                      const StiefelPoint& a, const StiefelPoint& b);

/// Minimum over unordered pairs of the configured metric.
double min_distance(const Codebook& cb);

/// Rejection-sampling packing: Haar draws are accepted when at distance
/// >= target_distance from every accepted point; stops after rejection_cap
/// consecutive rejections. Fully determined by the seed.
Codebook greedy_pack(const SpaceSpec& space, PackingMetric metric, const GreedyConfig& config);

/// Sphere-packing necessity check with the guaranteed lower ball volume:
/// v^kappa(radius) |C| <= vol M, radius = d0/2 in geodesic terms
/// (d0/(2 sqrt 2) for the Stiefel chordal metric). Any correct packing
/// passes; a failure indicates a bug.
struct HammingCheck {
    double lhs_log;
    double rhs_log;
    bool passes;
};
HammingCheck check_hamming(const Codebook& cb, double kappa_bar);

/// Gilbert-Varshamov floor from the flat upper ball volume, plus the sharper
/// exact floor on G_{1,n} where the closed-form ball volume is available.
struct GvCheck {
    long long gv_floor;
    std::optional<long long> exact_floor;
    bool passes;
};
GvCheck check_gv(const SpaceSpec& space, PackingMetric metric, double d0, int achieved_size);

/// R = log2(size)/n.
double rate(const Codebook& cb);

/// JSON round trip; schema
/// {family, k, n, metric, points: [[ [re,im], ... row-major ], ...]}.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

} // namespace stgr

#endif
