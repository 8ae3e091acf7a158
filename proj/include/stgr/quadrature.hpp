#ifndef STGR_QUADRATURE_HPP
#define STGR_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace stgr {

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order and
/// cached. Orders used here are small (7 and 15).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Adaptive 1-D integration with a nested G7-in-G15 error estimate.
/// Subdivides until the local estimate is below rel_tol * |whole| (plus an
/// absolute floor for integrals near zero). Throws NotConverged when the
/// recursion depth budget runs out.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_floor = 0.0);

} // namespace stgr

#endif
