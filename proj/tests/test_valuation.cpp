#include <doctest.h>

#include <cmath>

#include "phasetrop/error.hpp"
#include "phasetrop/hyperbolic.hpp"
#include "phasetrop/valuation.hpp"
#include "support.hpp"

using namespace phasetrop;
using namespace testing;

namespace {

HahnMat2 M(const char* a, const char* b, const char* c, const char* d) { return parse_matrix({a, b, c, d}); }

}  // namespace

TEST_CASE("flow_R_h") {
    std::mt19937_64 rng(1);
    const ProjPointC m(random_det1(rng));
    CHECK(dist_proj_c(flow_R_h(m, 1.0), m) < 1e-12);
    const double e2 = std::exp(2.0);
    const ProjPointC d(Mat2::diag(e2, 1.0 / e2));
    CHECK(dist_proj_c(flow_R_h(d, 0.5), ProjPointC(Mat2::diag(std::exp(1.0), std::exp(-1.0)))) < 1e-14);
    const Mat2 a = random_det1(rng);
    CHECK(dist_proj_c(flow_R_h(ProjPointC(a), 0.0), ProjPointC(polar(a).U)) < 1e-12);
    // R_h R_h' = R_{h h'}.
    CHECK(dist_proj_c(flow_R_h(flow_R_h(ProjPointC(a), 0.5), 0.3), flow_R_h(ProjPointC(a), 0.15)) < 1e-9);
    CHECK_THROWS_AS(flow_R_h(ProjPointC(Mat2{0.0, 1.0, 0.0, 0.0}), 0.5), Error);
}

TEST_CASE("val_symbolic examples") {
    const Mat2 u{std::polar(1.0, 0.4) / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0),
                 std::polar(1.0, -0.4) / std::sqrt(2.0)};
    ConePoint p = val_symbolic(HahnMat2::constant(u));
    REQUIRE(std::holds_alternative<VertexPoint>(p));
    CHECK(dist_proj_r(std::get<VertexPoint>(p).u, ProjPointR(u)) < 1e-12);
    CHECK(is_unitary(std::get<VertexPoint>(p).unitary(), 1e-12));

    p = val_symbolic(M("t", "t^2", "0", "t^-1"));
    REQUIRE(std::holds_alternative<InteriorPoint>(p));
    const auto& in = std::get<InteriorPoint>(p);
    CHECK(in.exact_alpha == Rational(2));
    CHECK(in.alpha == 2.0);
    CHECK(dist_proj_r(in.phase.cls(), ProjPointR(Mat2{0.0, 1.0, 0.0, 0.0})) < 1e-14);

    p = val_symbolic(M("0", "t", "0", "0"));
    REQUIRE(std::holds_alternative<BasePoint>(p));
    CHECK(dist_proj_c(std::get<BasePoint>(p).q.cls(), ProjPointC(Mat2{0.0, 1.0, 0.0, 0.0})) < 1e-15);
}

TEST_CASE("val_symbolic errors") {
    try {
        (void)val_symbolic(M("0", "0", "0", "0"));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
    // det vanishes on stored terms but the truncation hides the answer.
    try {
        (void)val_symbolic(M("t + O(t^-1)", "t", "t", "t"));
        FAIL("expected inconclusive");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inconclusive);
        CHECK(std::string(e.what()).starts_with("inconclusive-at-truncation"));
    }
}

TEST_CASE("val_symbolic is invariant under scaling by a series") {
    std::mt19937_64 rng(2);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const HahnMat2 A = random_hahn_mat(rng);
        const HahnSeries s = random_series(rng, 2);
        try {
            const ConePoint p = val_symbolic(A);
            const ConePoint q = val_symbolic(A.scaled(s));
            CHECK(kind_of(p) == kind_of(q));
            CHECK(cone_distance(p, q) < 1e-10);
            ++checked;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Inconclusive);
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("embed_cone") {
    const ConePoint p = InteriorPoint{1.0, FiberPoint(Mat2{0.0, 1.0, 0.0, 0.0}), Rational(1)};
    const double e = std::exp(1.0);
    const Mat2 expected{0.0, e, -1.0 / e, 0.0};
    CHECK(std::abs(expected.det() - 1.0) < 1e-15);
    CHECK(dist_proj_c(embed_cone(p), ProjPointC(expected)) < 1e-15);
    const ConePoint back = cone_coords(ProjPointC(expected));
    REQUIRE(std::holds_alternative<InteriorPoint>(back));
    CHECK(std::get<InteriorPoint>(back).alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist_proj_r(std::get<InteriorPoint>(back).phase.cls(), ProjPointR(Mat2{0.0, 1.0, 0.0, 0.0})) < 1e-12);

    CHECK(dist_proj_c(embed_cone(VertexPoint{ProjPointR(Mat2::identity())}), ProjPointC(Mat2::identity())) < 1e-15);
    const ConePoint b = BasePoint{QPoint(Mat2{0.0, 1.0, 0.0, 0.0})};
    CHECK(dist_proj_c(embed_cone(b), ProjPointC(Mat2{0.0, 1.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("cone_coords") {
    const ConePoint v = cone_coords(ProjPointC(Mat2::identity()));
    REQUIRE(std::holds_alternative<VertexPoint>(v));
    CHECK(dist_proj_r(std::get<VertexPoint>(v).u, ProjPointR(Mat2::identity())) < 1e-15);
    CHECK(std::holds_alternative<BasePoint>(cone_coords(ProjPointC(Mat2{1.0, 1.0, 1.0, 1.0}))));
}

TEST_CASE("val_numeric examples") {
    const HahnMat2 A = M("t", "t^2", "0", "t^-1");
    const ConePoint target = val_symbolic(A);
    std::vector<double> schedule;
    for (int k = 2; k <= 8; ++k) schedule.push_back(std::log(std::pow(10.0, k)));
    const NumericValuation nv = val_numeric(A, schedule, target);
    REQUIRE(nv.table.size() == schedule.size());
    for (std::size_t i = 1; i < nv.table.size(); ++i) CHECK(nv.table[i].dist <= nv.table[i - 1].dist + 1e-15);
    CHECK(nv.table.back().dist < 1e-3);
    CHECK(nv.table.back().h == doctest::Approx(1.0 / schedule.back()));

    const Mat2 u{0.6, 0.8, -0.8, 0.6};
    const NumericValuation nu = val_numeric(HahnMat2::constant(u), exp2_schedule(2, 10), VertexPoint{ProjPointR(u)});
    for (const auto& row : nu.table) CHECK(row.dist < 1e-12);

    const NumericValuation nq = val_numeric(M("0", "t", "0", "0"), exp2_schedule(2, 6));
    CHECK(std::isnan(nq.table.front().dist));
    for (std::size_t i = 1; i < nq.table.size(); ++i) CHECK(nq.table[i].dist == 0.0);
    CHECK(dist_proj_c(nq.estimate, ProjPointC(Mat2{0.0, 1.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("val_numeric schedule validation") {
    const HahnMat2 A = M("t", "0", "0", "1");
    const std::vector<double> bad_order{4.0, 2.0};
    CHECK_THROWS_AS(val_numeric(A, bad_order), Error);
    const std::vector<double> too_small{0.5, 2.0};
    CHECK_THROWS_AS(val_numeric(A, too_small), Error);
    CHECK_THROWS_AS(exp2_schedule(5, 5), Error);
    CHECK_THROWS_AS(exp2_schedule(2, 31), Error);
}

TEST_CASE("extrapolate_alpha") {
    const HahnMat2 A = M("t + 3 + t^-1", "2t^2 - i t", "1", "t^-1 + 5");
    const NumericValuation nv = val_numeric(A, exp2_schedule(4, 10));
    const ConePoint p = val_symbolic(A);
    REQUIRE(std::holds_alternative<InteriorPoint>(p));
    CHECK(extrapolate_alpha(nv.table) == doctest::Approx(std::get<InteriorPoint>(p).alpha).epsilon(1e-3));
}
