#include "stgr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "stgr/types.hpp"

namespace stgr {

namespace {

// Nodes via Newton iteration on P_n, starting from the Chebyshev guess.
GaussRule compute_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < order; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= order; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

struct Segment {
    double a, b, value, error;
    long order; // insertion counter, deterministic tie-break
};

struct WorstFirst {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.order > y.order;
    }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b, long order) {
    const GaussRule& g7 = gauss_legendre(7);
    const GaussRule& g15 = gauss_legendre(15);
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double s7 = 0.0, s15 = 0.0;
    for (int i = 0; i < 7; ++i) s7 += g7.weights[i] * f(mid + half * g7.nodes[i]);
    for (int i = 0; i < 15; ++i) s15 += g15.weights[i] * f(mid + half * g15.nodes[i]);
    double fine = s15 * half;
    return {a, b, fine, std::abs(fine - s7 * half), order};
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    // Fast path for the two nested rules; anything else goes to the cache.
    static const GaussRule g7 = compute_rule(7);
    static const GaussRule g15 = compute_rule(15);
    if (order == 7) return g7;
    if (order == 15) return g15;
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_floor) {
    if (!(b > a)) return 0.0;
    // Global refinement: always split the segment with the largest G7/G15
    // discrepancy, until the summed discrepancy is small against the running
    // total. This keeps spiked integrands from dragging the whole interval
    // down to roundoff-level local tolerances.
    constexpr int kMaxSegments = 200000;
    long counter = 0;
    std::priority_queue<Segment, std::vector<Segment>, WorstFirst> queue;
    queue.push(evaluate(f, a, b, counter++));
    double total = queue.top().value;
    double total_error = queue.top().error;

    while (total_error > rel_tol * std::max(std::abs(total), abs_floor)) {
        if (counter >= kMaxSegments)
            throw NotConverged("integrate_adaptive: refinement budget exceeded");
        Segment worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Width at machine resolution; its error cannot improve.
            queue.push({worst.a, worst.b, worst.value, 0.0, worst.order});
            total_error -= worst.error;
            continue;
        }
        Segment left = evaluate(f, worst.a, mid, counter++);
        Segment right = evaluate(f, mid, worst.b, counter++);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Fixed-order summation for reproducibility: collect and sort by the
    // left endpoint.
    std::vector<Segment> segments;
    segments.reserve(queue.size());
    while (!queue.empty()) {
        segments.push_back(queue.top());
        queue.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double out = 0.0;
    for (const Segment& s : segments) out += s.value;
    return out;
}

} // namespace stgr
