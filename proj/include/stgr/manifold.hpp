#ifndef STGR_MANIFOLD_HPP
#define STGR_MANIFOLD_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "stgr/parallel.hpp"
#include "stgr/rng.hpp"
#include "stgr/types.hpp"

namespace stgr {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// An n x k frame with orthonormal columns. Construction checks
/// frame'*frame = I entrywise to 1e-12.
struct StiefelPoint {
    Matrix frame;
    explicit StiefelPoint(Matrix f);
};

/// A k-dimensional subspace, stored through an (arbitrary) representing
/// frame. The associated projector frame*frame' is the canonical
/// representative.
struct GrassmannPoint {
    StiefelPoint representative;
    explicit GrassmannPoint(StiefelPoint rep) : representative(std::move(rep)) {}
};

/// Horizontal tangent in block form
///     X = [ A  -B' ]
///         [ B   0  ]
/// with A skew-Hermitian k x k and B complex (n-k) x k. Grassmann tangents
/// have A = 0 identically.
struct HorizontalTangent {
    Matrix a_block;
    Matrix b_block;
    SpaceSpec space;
    HorizontalTangent(Matrix a, Matrix b, SpaceSpec s);
};

/// Ascending principal angles in [0, pi/2].
struct PrincipalAngles {
    Eigen::VectorXd angles;
    double norm2() const { return angles.norm(); }
};

// -- construction -----------------------------------------------------------

StiefelPoint canonical_frame(const SpaceSpec& spec);

/// Haar-distributed frame: complex Gaussian matrix, thin QR, column phases
/// fixed so the triangular factor has positive real diagonal.
StiefelPoint haar_stiefel(const SpaceSpec& spec, std::uint64_t seed);

/// Zero tangent of the right shape.
HorizontalTangent zero_tangent(const SpaceSpec& spec);

/// Isotropic random direction in the horizontal space (Gaussian in
/// coordinates orthonormal for the 1/2-trace metric), rescaled so that
/// tangent_norm equals target_norm.
HorizontalTangent random_horizontal(const SpaceSpec& spec, double target_norm, Rng& rng);

// -- geometry ---------------------------------------------------------------

/// Geodesic length of the tangent: sqrt(|A|_F^2 / 2 + |B|_F^2).
double tangent_norm(const HorizontalTangent& t);

/// Embeds the block tangent into u(n) as an n x n skew-Hermitian matrix.
Matrix embed_tangent(const HorizontalTangent& t);

/// exp of a skew-Hermitian matrix through the unitary eigendecomposition of
/// -iX (inputs are normal, so no scaling-and-squaring is needed).
Matrix exp_skew(const Matrix& x);

/// Geodesic endpoint: completes the base frame to a unitary, applies
/// exp(X) and keeps the first k columns.
StiefelPoint exp_point(const StiefelPoint& base, const HorizontalTangent& tangent);

/// Principal angles from the singular values of p'*q, clamped into [0, 1]
/// before acos.
PrincipalAngles principal_angles(const StiefelPoint& p, const StiefelPoint& q);

/// Frobenius distance |p - q|_F (the coding metric on the Stiefel manifold).
double chordal_stiefel(const StiefelPoint& p, const StiefelPoint& q);

/// |sin theta|_2; equals |P_p - P_q|_F / sqrt(2).
double chordal_grassmann(const GrassmannPoint& p, const GrassmannPoint& q);

/// |theta|_2, the geodesic distance between subspaces.
double geodesic_grassmann(const GrassmannPoint& p, const GrassmannPoint& q);

/// Orthogonal projector frame*frame'.
Matrix projector(const StiefelPoint& p);

/// Skew-Hermitian logarithm of a unitary matrix, eigenphases taken in
/// (-pi, pi].
Matrix log_unitary(const Matrix& v);

/// Grassmann logarithm at the canonical base: the A = 0 tangent whose
/// exponential spans the same subspace as target. Requires all principal
/// angles < pi/2.
HorizontalTangent grassmann_log_canonical(const SpaceSpec& spec, const Matrix& target_frame);

// -- curvature --------------------------------------------------------------

/// Sectional curvature K = |[X,Y]|^2 / 4 + 3 |[X,Y]^par|^2 / 4 in the
/// 1/2-trace metric, with the inputs normalized to unit Frobenius norm of
/// the embedded matrices. The vertical part [.,.]^par is the isotropy
/// component: lower-right block for Stiefel, both diagonal blocks for
/// Grassmann.
double sectional_curvature(const SpaceSpec& spec, const HorizontalTangent& x,
                           const HorizontalTangent& y);

/// Diagonal Ricci entries ric(e_i, e_i) = sum_{j != i} K(e_i, e_j) for an
/// orthonormal horizontal basis (checked against the 1/2-trace metric).
Eigen::VectorXd ricci_diagonal(const SpaceSpec& spec,
                               const std::vector<HorizontalTangent>& basis);

/// Real dimension of the horizontal space: k(2n-k) for Stiefel,
/// 2k(n-k) for Grassmann.
int horizontal_dimension(const SpaceSpec& spec);

/// Gram-Schmidt orthonormal basis of the horizontal space in the 1/2-trace
/// metric, seeded (used by the Ricci tests and diagnostics).
std::vector<HorizontalTangent> random_orthonormal_basis(const SpaceSpec& spec,
                                                        std::uint64_t seed);

/// 1/2-trace inner product Re tr(X' Y) / 2 of two embedded tangents.
double metric_inner(const HorizontalTangent& x, const HorizontalTangent& y);

// -- sampling kernels -------------------------------------------------------

struct CurvatureScan {
    double min_curvature;
    double max_curvature;
    std::int64_t samples;
};

/// Evaluates K on `samples` independent random normalized tangent pairs.
/// Deterministic for a given seed, identical between Serial and Parallel.
CurvatureScan curvature_scan(const SpaceSpec& spec, std::int64_t samples,
                             std::uint64_t seed, Exec exec = Exec::Parallel);

} // namespace stgr

#endif
