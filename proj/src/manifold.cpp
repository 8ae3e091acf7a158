#include "stgr/manifold.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stgr {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

void check_same_shape(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(what) + ": shapes differ");
}

} // namespace

StiefelPoint::StiefelPoint(Matrix f) : frame(std::move(f)) {
    if (frame.rows() < frame.cols() || frame.cols() < 1)
        throw InvalidSpec("StiefelPoint: frame must be n x k with 1 <= k <= n");
    Matrix gram = frame.adjoint() * frame;
    Matrix dev = gram - Matrix::Identity(frame.cols(), frame.cols());
    if (dev.cwiseAbs().maxCoeff() > kOrthoTol)
        throw InvalidSpec("StiefelPoint: columns not orthonormal to 1e-12");
}

HorizontalTangent::HorizontalTangent(Matrix a, Matrix b, SpaceSpec s)
    : a_block(std::move(a)), b_block(std::move(b)), space(s) {
    if (a_block.rows() != space.k || a_block.cols() != space.k)
        throw DimensionMismatch("HorizontalTangent: A must be k x k");
    if (b_block.rows() != space.n - space.k || b_block.cols() != space.k)
        throw DimensionMismatch("HorizontalTangent: B must be (n-k) x k");
    if ((a_block + a_block.adjoint()).cwiseAbs().maxCoeff() > kOrthoTol)
        throw InvalidSpec("HorizontalTangent: A not skew-Hermitian to 1e-12");
    if (space.family == Family::Grassmann && a_block.cwiseAbs().maxCoeff() != 0.0)
        throw InvalidSpec("HorizontalTangent: Grassmann tangents need A = 0");
}

StiefelPoint canonical_frame(const SpaceSpec& spec) {
    Matrix f = Matrix::Zero(spec.n, spec.k);
    f.topRows(spec.k) = Matrix::Identity(spec.k, spec.k);
    return StiefelPoint(std::move(f));
}

StiefelPoint haar_stiefel(const SpaceSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    Matrix g(spec.n, spec.k);
    for (int j = 0; j < spec.k; ++j)
        for (int i = 0; i < spec.n; ++i)
            g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(spec.n, spec.k);
    Matrix r = qr.matrixQR().topRows(spec.k).triangularView<Eigen::Upper>();
    // Phase fix: without it thin QR is not Haar distributed.
    for (int j = 0; j < spec.k; ++j) {
        Complex d = r(j, j);
        double m = std::abs(d);
        q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
    }
    return StiefelPoint(std::move(q));
}

HorizontalTangent zero_tangent(const SpaceSpec& spec) {
    return HorizontalTangent(Matrix::Zero(spec.k, spec.k),
                             Matrix::Zero(spec.n - spec.k, spec.k), spec);
}

HorizontalTangent random_horizontal(const SpaceSpec& spec, double target_norm, Rng& rng) {
    const int k = spec.k, m = spec.n - spec.k;
    Matrix a = Matrix::Zero(k, k);
    if (spec.family == Family::Stiefel) {
        // Coordinates orthonormal in the 1/2-trace metric: diagonal entries
        // carry weight 1/2, so they get variance 2.
        const double sqrt2 = std::sqrt(2.0);
        for (int j = 0; j < k; ++j) a(j, j) = Complex(0.0, sqrt2 * rng.normal());
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) {
                Complex z(rng.normal(), rng.normal());
                a(p, q) = z;
                a(q, p) = -std::conj(z);
            }
    }
    Matrix b(m, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i)
            b(i, j) = Complex(rng.normal(), rng.normal());
    HorizontalTangent t(std::move(a), std::move(b), spec);
    double norm = tangent_norm(t);
    if (norm < 1e-300) return zero_tangent(spec);
    double s = target_norm / norm;
    t.a_block *= s;
    t.b_block *= s;
    return t;
}

double tangent_norm(const HorizontalTangent& t) {
    return std::sqrt(0.5 * t.a_block.squaredNorm() + t.b_block.squaredNorm());
}

Matrix embed_tangent(const HorizontalTangent& t) {
    const int k = t.space.k, n = t.space.n;
    Matrix x = Matrix::Zero(n, n);
    x.topLeftCorner(k, k) = t.a_block;
    if (n > k) {
        x.bottomLeftCorner(n - k, k) = t.b_block;
        x.topRightCorner(k, n - k) = -t.b_block.adjoint();
    }
    return x;
}

Matrix exp_skew(const Matrix& x) {
    if (x.rows() != x.cols()) throw DimensionMismatch("exp_skew: square input required");
    // -iX is Hermitian, so exp(X) = V diag(exp(i lambda)) V'.
    Matrix h = Complex(0.0, -1.0) * x;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    Eigen::VectorXcd phases(x.rows());
    for (int j = 0; j < x.rows(); ++j) {
        double lam = eig.eigenvalues()(j);
        phases(j) = Complex(std::cos(lam), std::sin(lam));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

StiefelPoint exp_point(const StiefelPoint& base, const HorizontalTangent& tangent) {
    const int n = tangent.space.n, k = tangent.space.k;
    if (base.frame.rows() != n || base.frame.cols() != k)
        throw DimensionMismatch("exp_point: base frame does not match tangent space");
    Matrix cols = exp_skew(embed_tangent(tangent)).leftCols(k);
    // Translate by a unitary completion of the base. [frame | Q2] is unitary
    // because Q2 from the QR of the frame is orthogonal to its range.
    bool canonical = true;
    for (int j = 0; j < k && canonical; ++j)
        for (int i = 0; i < n && canonical; ++i) {
            Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            if (std::abs(base.frame(i, j) - want) != 0.0) canonical = false;
        }
    if (canonical) return StiefelPoint(std::move(cols));
    Matrix completion(n, n);
    completion.leftCols(k) = base.frame;
    if (n > k) {
        Eigen::HouseholderQR<Matrix> qr(base.frame);
        Matrix qfull = qr.householderQ();
        completion.rightCols(n - k) = qfull.rightCols(n - k);
    }
    return StiefelPoint(completion * cols);
}

PrincipalAngles principal_angles(const StiefelPoint& p, const StiefelPoint& q) {
    check_same_shape(p.frame, q.frame, "principal_angles");
    Matrix overlap = p.frame.adjoint() * q.frame;
    Eigen::JacobiSVD<Matrix> svd(overlap);
    PrincipalAngles out;
    out.angles.resize(overlap.cols());
    // Singular values come out descending, so the angles are ascending.
    for (int i = 0; i < overlap.cols(); ++i) {
        double c = std::min(1.0, std::max(0.0, svd.singularValues()(i)));
        out.angles(i) = std::acos(c);
    }
    return out;
}

double chordal_stiefel(const StiefelPoint& p, const StiefelPoint& q) {
    check_same_shape(p.frame, q.frame, "chordal_stiefel");
    return (p.frame - q.frame).norm();
}

double chordal_grassmann(const GrassmannPoint& p, const GrassmannPoint& q) {
    PrincipalAngles theta = principal_angles(p.representative, q.representative);
    return theta.angles.array().sin().matrix().norm();
}

double geodesic_grassmann(const GrassmannPoint& p, const GrassmannPoint& q) {
    return principal_angles(p.representative, q.representative).norm2();
}

Matrix projector(const StiefelPoint& p) { return p.frame * p.frame.adjoint(); }

Matrix log_unitary(const Matrix& v) {
    if (v.rows() != v.cols()) throw DimensionMismatch("log_unitary: square input required");
    const int k = static_cast<int>(v.rows());
    if ((v.adjoint() * v - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
        throw NotUnitary("log_unitary: input is not unitary to 1e-10");
    // Unitary inputs are normal, so the Schur form is diagonal up to
    // roundoff; take eigenphases in (-pi, pi].
    Eigen::ComplexSchur<Matrix> schur(v);
    Eigen::VectorXcd logs(k);
    for (int j = 0; j < k; ++j) {
        Complex t = schur.matrixT()(j, j);
        double phase = std::atan2(t.imag(), t.real());
        if (phase <= -kPi) phase = kPi; // atan2 returns (-pi, pi]; keep the convention explicit
        logs(j) = Complex(0.0, phase);
    }
    Matrix out = schur.matrixU() * logs.asDiagonal() * schur.matrixU().adjoint();
    // Symmetrize away the Schur roundoff so the result is exactly skew.
    return 0.5 * (out - out.adjoint());
}

HorizontalTangent grassmann_log_canonical(const SpaceSpec& spec, const Matrix& target_frame) {
    const int k = spec.k, n = spec.n;
    if (target_frame.rows() != n || target_frame.cols() != k)
        throw DimensionMismatch("grassmann_log_canonical: frame shape mismatch");
    if (n == k) return zero_tangent(spec);
    Matrix top = target_frame.topRows(k);
    Matrix bottom = target_frame.bottomRows(n - k);
    // G = bottom * top^{-1} has singular values tan(theta); angles of pi/2
    // make top singular and have no tangent representation here.
    Eigen::FullPivLU<Matrix> lu(top);
    if (!lu.isInvertible())
        throw DegenerateInput("grassmann_log_canonical: a principal angle is pi/2");
    Matrix g = bottom * lu.inverse();
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd s = svd.singularValues();
    Eigen::VectorXd angles(s.size());
    for (int i = 0; i < s.size(); ++i) angles(i) = std::atan(s(i));
    Matrix b = svd.matrixU() * angles.asDiagonal() * svd.matrixV().adjoint();
    return HorizontalTangent(Matrix::Zero(k, k), std::move(b), spec);
}

int horizontal_dimension(const SpaceSpec& spec) {
    return spec.family == Family::Stiefel ? spec.k * (2 * spec.n - spec.k)
                                          : 2 * spec.k * (spec.n - spec.k);
}

double metric_inner(const HorizontalTangent& x, const HorizontalTangent& y) {
    if (!(x.space == y.space)) throw DimensionMismatch("metric_inner: spaces differ");
    Complex tr = (x.a_block.adjoint() * y.a_block).trace() +
                 2.0 * (x.b_block.adjoint() * y.b_block).trace();
    return 0.5 * tr.real();
}

namespace {

// Embedded commutator split into its vertical (isotropy) part.
double curvature_from_embedded(const SpaceSpec& spec, const Matrix& x, const Matrix& y) {
    const int k = spec.k, n = spec.n;
    Matrix com = x * y - y * x;
    double total_g2 = 0.5 * com.squaredNorm();
    double vert_g2 = 0.5 * com.bottomRightCorner(n - k, n - k).squaredNorm();
    if (spec.family == Family::Grassmann)
        vert_g2 += 0.5 * com.topLeftCorner(k, k).squaredNorm();
    return 0.25 * total_g2 + 0.75 * vert_g2;
}

} // namespace

double sectional_curvature(const SpaceSpec& spec, const HorizontalTangent& x,
                           const HorizontalTangent& y) {
    Matrix xe = embed_tangent(x);
    Matrix ye = embed_tangent(y);
    double nx = xe.norm(), ny = ye.norm();
    if (nx < 1e-14 || ny < 1e-14)
        throw DegenerateInput("sectional_curvature: zero tangent");
    xe /= nx;
    ye /= ny;
    return curvature_from_embedded(spec, xe, ye);
}

Eigen::VectorXd ricci_diagonal(const SpaceSpec& spec,
                               const std::vector<HorizontalTangent>& basis) {
    const int d = horizontal_dimension(spec);
    if (static_cast<int>(basis.size()) != d)
        throw DegenerateInput("ricci_diagonal: basis must span the horizontal space");
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(metric_inner(basis[i], basis[j]) - want) > 1e-8)
                throw DegenerateInput("ricci_diagonal: basis not orthonormal to 1e-8");
        }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (j != i) out(i) += sectional_curvature(spec, basis[i], basis[j]);
    return out;
}

std::vector<HorizontalTangent> random_orthonormal_basis(const SpaceSpec& spec,
                                                        std::uint64_t seed) {
    const int d = horizontal_dimension(spec);
    std::vector<HorizontalTangent> basis;
    basis.reserve(d);
    Rng rng(seed);
    int attempts = 0;
    while (static_cast<int>(basis.size()) < d) {
        if (++attempts > 20 * d + 100)
            throw NotConverged("random_orthonormal_basis: degenerate draws");
        HorizontalTangent cand = random_horizontal(spec, 1.0, rng);
        for (const HorizontalTangent& e : basis) {
            double c = metric_inner(cand, e);
            cand.a_block -= c * e.a_block;
            cand.b_block -= c * e.b_block;
        }
        double norm = tangent_norm(cand);
        if (norm < 1e-8) continue;
        cand.a_block /= norm;
        cand.b_block /= norm;
        basis.push_back(std::move(cand));
    }
    return basis;
}

CurvatureScan curvature_scan(const SpaceSpec& spec, std::int64_t samples,
                             std::uint64_t seed, Exec exec) {
    if (samples < 1) throw InvalidSpec("curvature_scan: samples must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(samples));
    auto body = [&](std::int64_t i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        HorizontalTangent x = random_horizontal(spec, 1.0, rng);
        HorizontalTangent y = random_horizontal(spec, 1.0, rng);
        values[static_cast<std::size_t>(i)] = sectional_curvature(spec, x, y);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    } else {
        for (std::int64_t i = 0; i < samples; ++i) body(i);
    }
    CurvatureScan scan{values[0], values[0], samples};
    for (double v : values) {
        scan.min_curvature = std::min(scan.min_curvature, v);
        scan.max_curvature = std::max(scan.max_curvature, v);
    }
    return scan;
}

} // namespace stgr
