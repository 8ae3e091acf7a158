#include "doctest.h"

#include <cmath>

#include "stgr/manifold.hpp"

using namespace stgr;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpaceSpec stiefel(int k, int n) { return SpaceSpec(Family::Stiefel, k, n); }
SpaceSpec grassmann(int k, int n) { return SpaceSpec(Family::Grassmann, k, n); }

StiefelPoint line_at(double t) {
    Matrix f(2, 1);
    f(0, 0) = std::cos(t);
    f(1, 0) = std::sin(t);
    return StiefelPoint(std::move(f));
}

// Appendix-style closed form for A = 0 tangents, used as the oracle for
// exp_point. Requires n - k >= k so the thin SVD has the layout below.
Matrix closed_form_a0(const HorizontalTangent& t) {
    const int k = t.space.k, n = t.space.n;
    REQUIRE(n - k >= k);
    Eigen::JacobiSVD<Matrix> svd(t.b_block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd s = svd.singularValues();
    Matrix w = svd.matrixV();
    Matrix frame(n, k);
    frame.topRows(k) =
        w * s.array().cos().matrix().cast<Complex>().asDiagonal() * w.adjoint();
    frame.bottomRows(n - k) =
        svd.matrixU() * s.array().sin().matrix().cast<Complex>().asDiagonal() * w.adjoint();
    return frame;
}

} // namespace

TEST_SUITE_BEGIN("manifold");

TEST_CASE("space spec validation") {
    CHECK_THROWS_AS(SpaceSpec(Family::Stiefel, 3, 2), InvalidSpec);
    CHECK_THROWS_AS(SpaceSpec(Family::Grassmann, 2, 3), InvalidSpec);
    CHECK_THROWS_AS(SpaceSpec(Family::Stiefel, 0, 2), InvalidSpec);
    CHECK(stiefel(2, 2).unitary_group());
    CHECK_FALSE(stiefel(1, 2).unitary_group());
}

TEST_CASE("haar sampling dimension one is a phase") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
        StiefelPoint p = haar_stiefel(stiefel(1, 1), seed);
        CHECK(std::abs(std::abs(p.frame(0, 0)) - 1.0) < 1e-12);
    }
}

TEST_CASE("haar sampling produces orthonormal frames") {
    for (const SpaceSpec& spec :
         {stiefel(1, 1), stiefel(2, 2), stiefel(2, 5), stiefel(3, 7), grassmann(2, 4)}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            StiefelPoint p = haar_stiefel(spec, seed);
            Matrix dev = p.frame.adjoint() * p.frame -
                         Matrix::Identity(spec.k, spec.k);
            CHECK(dev.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("haar invariance pushes the mean projector to (k/n) I") {
    const SpaceSpec spec = grassmann(1, 2);
    Matrix mean = Matrix::Zero(2, 2);
    const int samples = 10000;
    for (int i = 0; i < samples; ++i)
        mean += projector(haar_stiefel(spec, derive_seed(1234, i)));
    mean /= static_cast<double>(samples);
    CHECK((mean - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("exp of zero tangent returns the base") {
    for (const SpaceSpec& spec : {stiefel(2, 4), stiefel(2, 2), grassmann(1, 3)}) {
        StiefelPoint base = haar_stiefel(spec, 7);
        StiefelPoint out = exp_point(base, zero_tangent(spec));
        CHECK((out.frame - base.frame).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("exp on V_{1,2} is the plane rotation") {
    const SpaceSpec spec = stiefel(1, 2);
    for (double t : {0.1, 0.7, 1.3}) {
        Matrix b(1, 1);
        b(0, 0) = t;
        HorizontalTangent tan(Matrix::Zero(1, 1), b, spec);
        StiefelPoint out = exp_point(canonical_frame(spec), tan);
        CHECK(std::abs(out.frame(0, 0) - std::cos(t)) < 1e-14);
        CHECK(std::abs(out.frame(1, 0) - std::sin(t)) < 1e-14);
    }
}

TEST_CASE("exp on U(1) with A = i pi lands on -1") {
    const SpaceSpec spec = stiefel(1, 1);
    Matrix a(1, 1);
    a(0, 0) = Complex(0.0, kPi);
    HorizontalTangent tan(a, Matrix::Zero(0, 1), spec);
    StiefelPoint out = exp_point(canonical_frame(spec), tan);
    CHECK(std::abs(out.frame(0, 0) - Complex(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("exp keeps frames orthonormal from any base") {
    for (const SpaceSpec& spec : {stiefel(2, 5), stiefel(3, 3), grassmann(2, 6)}) {
        Rng rng(99);
        for (int trial = 0; trial < 20; ++trial) {
            StiefelPoint base = haar_stiefel(spec, rng.next_u64());
            HorizontalTangent t = random_horizontal(spec, 3.0 * rng.uniform(), rng);
            StiefelPoint out = exp_point(base, t);
            Matrix dev = out.frame.adjoint() * out.frame -
                         Matrix::Identity(spec.k, spec.k);
            CHECK(dev.cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("exp matches the closed form for A = 0 tangents") {
    for (const SpaceSpec& spec : {stiefel(1, 2), stiefel(2, 4), stiefel(2, 5),
                                  grassmann(3, 7)}) {
        Rng rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            Matrix b(spec.n - spec.k, spec.k);
            for (int j = 0; j < spec.k; ++j)
                for (int i = 0; i < spec.n - spec.k; ++i)
                    b(i, j) = Complex(rng.normal(), rng.normal());
            HorizontalTangent t(Matrix::Zero(spec.k, spec.k), std::move(b), spec);
            StiefelPoint out = exp_point(canonical_frame(spec), t);
            CHECK((out.frame - closed_form_a0(t)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("principal angles fixtures") {
    StiefelPoint e1 = line_at(0.0);
    StiefelPoint e2 = line_at(0.5 * kPi);
    CHECK(principal_angles(e1, e1).angles.maxCoeff() == 0.0);
    CHECK(principal_angles(e1, e2).angles(0) == doctest::Approx(0.5 * kPi).epsilon(1e-12));
    for (double t : {0.2, 0.9, 1.4}) {
        CHECK(principal_angles(e1, line_at(t)).angles(0) ==
              doctest::Approx(t).epsilon(1e-12));
    }
    SUBCASE("angles are ascending and clamped") {
        const SpaceSpec spec = grassmann(2, 5);
        Rng rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            PrincipalAngles pa = principal_angles(haar_stiefel(spec, rng.next_u64()),
                                                  haar_stiefel(spec, rng.next_u64()));
            for (int i = 0; i + 1 < pa.angles.size(); ++i)
                CHECK(pa.angles(i) <= pa.angles(i + 1));
            CHECK(pa.angles.minCoeff() >= 0.0);
            CHECK(pa.angles.maxCoeff() <= 0.5 * kPi);
        }
    }
}

TEST_CASE("chordal distances fixtures") {
    const SpaceSpec u2 = stiefel(2, 2);
    StiefelPoint id2 = canonical_frame(u2);
    StiefelPoint neg(Matrix(-Matrix::Identity(2, 2)));
    CHECK(chordal_stiefel(id2, id2) == 0.0);
    CHECK(chordal_stiefel(id2, neg) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

    Matrix e1m(2, 1), e2m(2, 1);
    e1m << 1.0, 0.0;
    e2m << 0.0, 1.0;
    CHECK(chordal_stiefel(StiefelPoint(e1m), StiefelPoint(e2m)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    GrassmannPoint l0(line_at(0.0)), l90(line_at(0.5 * kPi));
    CHECK(chordal_grassmann(l0, l0) == 0.0);
    CHECK(chordal_grassmann(l0, l90) == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.3, 1.1})
        CHECK(chordal_grassmann(l0, GrassmannPoint(line_at(t))) ==
              doctest::Approx(std::sin(t)).epsilon(1e-12));
}

TEST_CASE("grassmann chordal equals projector distance over sqrt(2)") {
    const SpaceSpec spec = grassmann(2, 5);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        GrassmannPoint p(haar_stiefel(spec, rng.next_u64()));
        GrassmannPoint q(haar_stiefel(spec, rng.next_u64()));
        double via_angles = chordal_grassmann(p, q);
        double via_projectors =
            (projector(p.representative) - projector(q.representative)).norm() /
            std::sqrt(2.0);
        CHECK(via_angles == doctest::Approx(via_projectors).epsilon(1e-10));
    }
}

TEST_CASE("geodesic grassmann fixtures and tangent consistency") {
    GrassmannPoint l0(line_at(0.0));
    CHECK(geodesic_grassmann(l0, l0) == 0.0);
    CHECK(geodesic_grassmann(l0, GrassmannPoint(line_at(0.5 * kPi))) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-12));
    CHECK(geodesic_grassmann(l0, GrassmannPoint(line_at(0.8))) ==
          doctest::Approx(0.8).epsilon(1e-12));

    SUBCASE("norm of the generating tangent is recovered") {
        const SpaceSpec spec = grassmann(2, 5);
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            // Keep every singular value of B below pi/2 by bounding the norm.
            HorizontalTangent t = random_horizontal(spec, 1.2 * rng.uniform(), rng);
            StiefelPoint base = canonical_frame(spec);
            GrassmannPoint q(exp_point(base, t));
            CHECK(geodesic_grassmann(GrassmannPoint(base), q) ==
                  doctest::Approx(tangent_norm(t)).epsilon(1e-9));
        }
    }
}

TEST_CASE("tangent norm fixtures") {
    const SpaceSpec u2 = stiefel(2, 2);
    CHECK(tangent_norm(zero_tangent(u2)) == 0.0);
    Matrix a(2, 2);
    a << Complex(0, 1), 0, 0, Complex(0, -1);
    CHECK(tangent_norm(HorizontalTangent(a, Matrix::Zero(0, 2), u2)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const SpaceSpec g = grassmann(1, 3);
    Matrix b(2, 1);
    b << 0.6, 0.8;
    CHECK(tangent_norm(HorizontalTangent(Matrix::Zero(1, 1), b, g)) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("projector invariants") {
    const SpaceSpec spec = stiefel(2, 5);
    Matrix p0 = projector(canonical_frame(spec));
    CHECK((p0.topLeftCorner(2, 2) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p0.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);

    Rng rng(23);
    for (const SpaceSpec& s : {stiefel(2, 5), grassmann(3, 7), stiefel(1, 2)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix p = projector(haar_stiefel(s, rng.next_u64()));
            CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(p.trace().real() - s.k) < 1e-10);
            double want = static_cast<double>(s.k) * (s.n - s.k) / s.n;
            Matrix centered = p - (static_cast<double>(s.k) / s.n) *
                                      Matrix::Identity(s.n, s.n);
            CHECK(centered.squaredNorm() == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("sectional curvature fixtures") {
    const SpaceSpec u2 = stiefel(2, 2);
    SUBCASE("commuting tangents give zero") {
        Matrix a1(2, 2), a2(2, 2);
        a1 << Complex(0, 1), 0, 0, Complex(0, 1);
        a2 << Complex(0, 2), 0, 0, Complex(0, -1);
        HorizontalTangent x(a1, Matrix::Zero(0, 2), u2);
        HorizontalTangent y(a2, Matrix::Zero(0, 2), u2);
        CHECK(sectional_curvature(u2, x, y) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("analytic U(2) pair") {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix a1(2, 2), a2(2, 2);
        a1 << Complex(0, s), 0, 0, Complex(0, -s);
        a2 << 0, s, -s, 0;
        HorizontalTangent x(a1, Matrix::Zero(0, 2), u2);
        HorizontalTangent y(a2, Matrix::Zero(0, 2), u2);
        CHECK(std::abs(sectional_curvature(u2, x, y) - 0.25) < 1e-12);
    }
    SUBCASE("zero tangent is rejected") {
        CHECK_THROWS_AS(sectional_curvature(u2, zero_tangent(u2), zero_tangent(u2)),
                        DegenerateInput);
    }
}

TEST_CASE("curvature caps hold on random pairs") {
    struct Case {
        SpaceSpec spec;
        double cap;
    };
    const Case cases[] = {{stiefel(2, 2), 2.0},
                          {stiefel(2, 4), 2.5},
                          {grassmann(2, 4), 4.0},
                          {grassmann(1, 3), 4.0}};
    for (const Case& c : cases) {
        CurvatureScan scan = curvature_scan(c.spec, 2000, 77);
        CHECK(scan.min_curvature >= -1e-12);
        CHECK(scan.max_curvature <= c.cap + 1e-9);
    }
}

TEST_CASE("ricci diagonal") {
    SUBCASE("single direction has no partner") {
        const SpaceSpec u1 = stiefel(1, 1);
        Matrix a(1, 1);
        a(0, 0) = Complex(0.0, std::sqrt(2.0));
        std::vector<HorizontalTangent> basis{HorizontalTangent(a, Matrix::Zero(0, 1), u1)};
        Eigen::VectorXd ric = ricci_diagonal(u1, basis);
        CHECK(ric.size() == 1);
        CHECK(ric(0) == 0.0);
    }
    SUBCASE("V_{1,2} values and basis-invariant trace") {
        // V_{1,2} is a squashed 3-sphere: the fiber direction and the two
        // B directions carry different Ricci values, (1, 3, 3)/4 in this
        // normalization. What homogeneity does fix is the trace, for every
        // orthonormal basis, and equality inside the isotropy orbit.
        const SpaceSpec spec = stiefel(1, 2);
        Matrix a(1, 1), z(1, 1);
        a(0, 0) = Complex(0.0, std::sqrt(2.0));
        z(0, 0) = 0.0;
        Matrix b_re(1, 1), b_im(1, 1), b0(1, 1);
        b_re(0, 0) = 1.0;
        b_im(0, 0) = Complex(0.0, 1.0);
        b0(0, 0) = 0.0;
        std::vector<HorizontalTangent> aligned{HorizontalTangent(a, b0, spec),
                                               HorizontalTangent(z, b_re, spec),
                                               HorizontalTangent(z, b_im, spec)};
        Eigen::VectorXd pure = ricci_diagonal(spec, aligned);
        CHECK(pure(0) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(pure(1) == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(pure(2) == doctest::Approx(0.75).epsilon(1e-12));

        Eigen::VectorXd first = ricci_diagonal(spec, random_orthonormal_basis(spec, 1));
        Eigen::VectorXd second = ricci_diagonal(spec, random_orthonormal_basis(spec, 2));
        CHECK(first.minCoeff() >= -1e-9);
        CHECK(first.sum() == doctest::Approx(pure.sum()).epsilon(1e-8));
        CHECK(second.sum() == doctest::Approx(pure.sum()).epsilon(1e-8));
    }
    SUBCASE("non-orthonormal basis is rejected") {
        const SpaceSpec spec = stiefel(1, 2);
        auto basis = random_orthonormal_basis(spec, 3);
        basis[0].b_block *= 2.0;
        CHECK_THROWS_AS(ricci_diagonal(spec, basis), DegenerateInput);
    }
}

TEST_CASE("log of a unitary matrix") {
    CHECK(log_unitary(Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

    Matrix phase(1, 1);
    phase(0, 0) = std::polar(1.0, 0.5 * kPi);
    Matrix lg = log_unitary(phase);
    CHECK(std::abs(lg(0, 0) - Complex(0.0, 0.5 * kPi)) < 1e-14);

    SUBCASE("round trip on small skew-Hermitian inputs") {
        Rng rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            const SpaceSpec u3 = stiefel(3, 3);
            HorizontalTangent t = random_horizontal(u3, 0.8 * rng.uniform() + 0.1, rng);
            Matrix v = exp_skew(t.a_block);
            CHECK((log_unitary(v) - t.a_block).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
    SUBCASE("non-unitary input is rejected") {
        CHECK_THROWS_AS(log_unitary(Matrix::Zero(2, 2)), NotUnitary);
    }
}

TEST_SUITE_END();
