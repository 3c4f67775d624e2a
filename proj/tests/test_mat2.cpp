#include <doctest.h>

#include <numbers>

#include "phasetrop/error.hpp"
#include "phasetrop/mat2.hpp"
#include "support.hpp"

using namespace phasetrop;
using namespace testing;

TEST_CASE("det_tr_adj") {
    auto r = det_tr_adj({1.0, 2.0, 3.0, 4.0});
    CHECK(r.det == cplx(-2.0));
    CHECK(r.tr == cplx(5.0));
    CHECK(mat_dist(r.adj, {4.0, -2.0, -3.0, 1.0}) == 0.0);
    r = det_tr_adj(Mat2::identity());
    CHECK(r.det == cplx(1.0));
    CHECK(r.tr == cplx(2.0));
    CHECK(mat_dist(r.adj, Mat2::identity()) == 0.0);
    r = det_tr_adj({0.0, 1.0, 0.0, 0.0});
    CHECK(r.det == cplx(0.0));
    CHECK(r.tr == cplx(0.0));
    CHECK(mat_dist(r.adj, {0.0, -1.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("svd2 examples") {
    SVD2 s = svd2(Mat2::diag(2.0, 0.5));
    CHECK(s.s1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.s2 == doctest::Approx(0.5).epsilon(1e-15));
    s = svd2({0.0, 1.0, 0.0, 0.0});
    CHECK(s.s1 == doctest::Approx(1.0));
    CHECK(s.s2 == 0.0);
    CHECK(mat_dist(s.reconstruct(), {0.0, 1.0, 0.0, 0.0}) < 1e-15);
}

TEST_CASE("svd2 reconstruction oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Mat2 m = gauss_mat(rng);
        const SVD2 s = svd2(m);
        CHECK(s.s1 >= s.s2);
        CHECK(s.s2 >= 0.0);
        CHECK(mat_dist(s.reconstruct(), m) < 1e-10 * m.frobenius_norm());
        CHECK(std::abs(inner(s.u1, s.u2)) < 1e-12);
        CHECK(std::abs(inner(s.v1, s.v2)) < 1e-12);
    }
}

TEST_CASE("polar examples") {
    const Mat2 rot{0.0, -1.0, 1.0, 0.0};
    const Mat2 m = Mat2::diag(2.0, 0.5) * rot;
    Polar p = polar(m);
    CHECK(mat_dist(p.P, Mat2::diag(2.0, 0.5)) < 1e-14);
    CHECK(mat_dist(p.U, rot) < 1e-14);
    CHECK(mat_dist(p.P * p.U, m) < 1e-14);
    // P = sqrt(m m*) by an independent route.
    CHECK(mat_dist(p.P, frac_power(m * m.adjoint(), 0.5)) < 1e-12);

    const Mat2 u{std::polar(1.0, 0.3) / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                 std::polar(1.0, -0.3) / std::sqrt(2.0)};
    p = polar(u);
    CHECK(mat_dist(p.P, Mat2::identity()) < 1e-14);
    CHECK(mat_dist(p.U, u) < 1e-14);

    const Mat2 h{3.0, cplx(1.0, 1.0), cplx(1.0, -1.0), 2.0};
    p = polar(h);
    CHECK(mat_dist(p.P, h) < 1e-13);
    CHECK(mat_dist(p.U, Mat2::identity()) < 1e-14);
    CHECK_FALSE(p.unitary_nonunique);

    p = polar({0.0, 1.0, 0.0, 0.0});
    CHECK(p.unitary_nonunique);
    CHECK(is_unitary(p.U, 1e-12));
    CHECK(mat_dist(p.P * p.U, {0.0, 1.0, 0.0, 0.0}) < 1e-14);
}

TEST_CASE("frac_power") {
    CHECK(mat_dist(frac_power(Mat2::diag(4.0, 0.25), 0.5), Mat2::diag(2.0, 0.5)) < 1e-15);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Mat2 g = gauss_mat(rng);
        const Mat2 P = g * g.adjoint() + Mat2::identity() * cplx(0.1);
        CHECK(mat_dist(frac_power(P, 0.0), Mat2::identity()) < 1e-14);
        CHECK(mat_dist(frac_power(P, 1.0), P) < 1e-12 * P.frobenius_norm());
        const Mat2 c = frac_power(P, 1.0 / 3.0);
        CHECK(mat_dist(c * c * c, P) < 1e-9 * P.frobenius_norm());
    }
    CHECK_THROWS_AS(frac_power({1.0, 1.0, 0.0, 1.0}, 0.5), Error);
    CHECK_THROWS_AS(frac_power(Mat2::diag(1.0, -1.0), 0.5), Error);
    CHECK_THROWS_AS(frac_power(Mat2::identity(), -1.0), Error);
}

TEST_CASE("projective distances") {
    const ProjPointC p(Mat2{1.0, cplx(0, 2), 3.0, 0.5});
    CHECK(dist_proj_c(p, p) == 0.0);
    CHECK(dist_proj_c(p, ProjPointC(cplx(0, 1) * p.rep())) < 1e-15);
    const double d = dist_proj_c(ProjPointC(Mat2{1.0, 0.0, 0.0, 0.0}), ProjPointC(Mat2{0.0, 1.0, 0.0, 0.0}));
    CHECK(d == doctest::Approx(std::numbers::pi / 2));

    const ProjPointR r(Mat2{1.0, cplx(0, 2), 3.0, 0.5});
    CHECK(dist_proj_r(r, ProjPointR(-2.0 * r.rep())) < 1e-15);
    CHECK(dist_proj_r(r, ProjPointR(cplx(0, 1) * r.rep())) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("canonical representatives") {
    const ProjPointC p(Mat2{0.0, cplx(0, -3), 1.0, 0.0});
    CHECK(p.rep().frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.rep().b.imag() == 0.0);
    CHECK(p.rep().b.real() > 0.0);
    const ProjPointR r(Mat2{-2.0, 1.0, 0.0, 0.0});
    CHECK(r.rep().a.real() > 0.0);
    CHECK_THROWS_AS(ProjPointC(Mat2{}), Error);
}

TEST_CASE("normalize_det") {
    const Mat2 n = normalize_det({2.0, 1.0, 1.0, 3.0});
    CHECK(std::abs(n.det() - 1.0) < 1e-14);
    CHECK_THROWS_AS(normalize_det({1.0, 1.0, 1.0, 1.0}), Error);
}
