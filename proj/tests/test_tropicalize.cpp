#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "phasetrop/error.hpp"
#include "phasetrop/tropicalize.hpp"
#include "support.hpp"

using namespace phasetrop;
using namespace testing;

namespace {

// Expands prod (z - r) into coefficients, highest degree first.
std::vector<cplx> from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= r * c[i];
        }
        c = next;
    }
    return c;
}

// Greedy matching distance between two root multisets.
double match(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (const cplx& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&x](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

HahnMat2 M(const char* a, const char* b, const char* c, const char* d) { return parse_matrix({a, b, c, d}); }

}  // namespace

TEST_CASE("HomogPoly4 parse and evaluate") {
    const HomogPoly4 det = HomogPoly4::parse("x0*x3 - x1*x2");
    CHECK(det.degree() == 2);
    const Mat2 m{1.0, 2.0, 3.0, 4.0};
    CHECK(det(m) == m.det());
    const HomogPoly4 f = HomogPoly4::parse("(1+2i) x0^2 x1 + 3 x3^3 - i x1 x2 x3");
    CHECK(f.degree() == 3);
    CHECK(f.degree_in(0) == 2);
    CHECK(f.degree_in(3) == 3);
    CHECK(std::abs(f(m) - (cplx(1, 2) * 2.0 + 3.0 * 64.0 - cplx(0, 1) * 24.0)) < 1e-12);
    const HomogPoly4 g = HomogPoly4::parse(f.to_string());
    CHECK(g.monomials() == f.monomials());
    CHECK_THROWS_AS(HomogPoly4::parse("x0 + x1^2"), Error);
    CHECK_THROWS_AS(HomogPoly4::parse("x0 - x0"), Error);
    CHECK_THROWS_AS(HomogPoly4::parse("x4"), ParseError);
    CHECK_THROWS_AS(HomogPoly4::parse("x0 +"), ParseError);
}

TEST_CASE("HomogPoly4 on series matrices") {
    const HomogPoly4 det = HomogPoly4::parse("x0 x3 - x1 x2");
    const HahnMat2 A = M("t", "t^2", "3", "t^-1");
    CHECK(series_close(det(A), A.det()));
}

TEST_CASE("restrict_to_line") {
    const HomogPoly4 f = HomogPoly4::parse("x0 x3 - x1 x2 + 2 x0^2");
    std::mt19937_64 rng(4);
    const Mat2 p = gauss_mat(rng), q = gauss_mat(rng);
    const auto c = f.restrict_to_line(p, q);
    REQUIRE(c.size() == 3);
    for (double s : {-1.5, 0.0, 0.7, 2.0}) {
        const cplx direct = f(p + cplx(s) * q);
        const cplx poly = c[0] + s * c[1] + s * s * c[2];
        CHECK(std::abs(direct - poly) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("roots_univariate") {
    CHECK(match(roots_univariate(std::vector<cplx>{1.0, 0.0, 1.0}), {cplx(0, 1), cplx(0, -1)}) < 1e-12);
    CHECK(match(roots_univariate(from_roots({1.0, 1.0, -2.0})), {1.0, 1.0, -2.0}) < 1e-7);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        std::vector<cplx> c(6);
        for (auto& x : c) x = gauss_c(rng);
        const auto roots = roots_univariate(c);
        CHECK(roots.size() == 5);
        for (const cplx& z : roots) {
            cplx v = 0.0;
            for (const cplx& a : c) v = v * z + a;
            CHECK(std::abs(v) < 1e-8);
        }
    }
    CHECK(roots_univariate(std::vector<cplx>{2.0}).empty());
    CHECK_THROWS_AS(roots_univariate(std::vector<cplx>{0.0, 1.0}), Error);
}

TEST_CASE("task_rng is order independent") {
    auto a = task_rng(7, 1, 3);
    auto b = task_rng(7, 1, 3);
    CHECK(a() == b());
    auto c = task_rng(7, 1, 4);
    auto d = task_rng(7, 2, 3);
    CHECK(task_rng(7, 1, 3)() != c());
    CHECK(task_rng(7, 1, 3)() != d());
}

TEST_CASE("sample_variety") {
    const auto lin = sample_variety(HomogPoly4::parse("x0 - x3"), 40, 1);
    CHECK(lin.off_q.size() + lin.on_q.size() == 40);
    for (const auto& p : lin.off_q) CHECK(std::abs(p.rep().a - p.rep().d) < 1e-8);

    const auto q = sample_variety(HomogPoly4::parse("x0 x3 - x1 x2"), 30, 2);
    CHECK(q.off_q.empty());
    CHECK(q.on_q.size() == 30);

    std::mt19937_64 rng(3);
    std::map<HomogPoly4::Exponents, cplx> mons;
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = i; j < 4; ++j) {
            HomogPoly4::Exponents e{0, 0, 0, 0};
            ++e[i];
            ++e[j];
            mons[e] = gauss_c(rng);
        }
    const HomogPoly4 f(mons);
    const auto s = sample_variety(f, 200, 3);
    CHECK(s.off_q.size() + s.on_q.size() == 200);
    for (const auto& p : s.off_q) CHECK(f.residual(p.rep()) < 1e-8);
}

TEST_CASE("sample_V_cap_Q") {
    for (const auto& [text, check] : std::vector<std::pair<const char*, int>>{{"x0 + x3", 0}, {"x0 - x3", 1}}) {
        const auto pts = sample_V_cap_Q(HomogPoly4::parse(text), 30, 5);
        CHECK(pts.size() == 30);
        for (const auto& q : pts) {
            const Mat2& m = q.rep();
            CHECK(std::abs(m.det()) < 1e-10);
            CHECK(std::abs(check == 0 ? m.a + m.d : m.a - m.d) < 1e-8);
        }
    }
    const HomogPoly4 cubic = HomogPoly4::parse("x0^3 + 2 x1 x2 x3 - (0.5+1i) x2^3 + x3^2 x1");
    for (const auto& q : sample_V_cap_Q(cubic, 40, 6)) CHECK(cubic.residual(q.rep()) < 1e-8);
    try {
        (void)sample_V_cap_Q(HomogPoly4::parse("x0 x3 - x1 x2"), 5, 1);
        FAIL("expected hypothesis error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
        CHECK(std::string(e.what()) == "component inside Q");
    }
}

TEST_CASE("constant_family_image") {
    const std::vector<double> alphas{0.5, 1.0, 2.0};
    const std::vector<double> thetas{0.0, 1.0, 2.0};
    const HomogPoly4 f = HomogPoly4::parse("x1");
    const LabeledCloud cloud = constant_family_image(f, {16, 4}, alphas, thetas, 9);
    CHECK(cloud.count(CloudLabel::CoamoebaFloor) > 0);
    CHECK(cloud.count(CloudLabel::Cylinder) == 4 * 9);
    CHECK(cloud.count(CloudLabel::InfinityBase) == 4);
    // Floor: polar unitary factors of the lower-triangular samples, in order.
    const auto samples = sample_variety(f, 16, 9);
    std::size_t floor_index = 0;
    for (const auto& p : cloud.points()) {
        CHECK(kind_of(p.point) == label_kind(p.label));
        if (const auto* v = std::get_if<VertexPoint>(&p.point)) {
            const Mat2& m = samples.off_q.at(floor_index++).rep();
            CHECK(std::abs(m.b) < 1e-9);
            CHECK(dist_proj_r(v->u, ProjPointR(polar(normalize_det(m)).U)) < 1e-9);
            CHECK(is_unitary(v->unitary(), 1e-9));
        } else if (const auto* b = std::get_if<BasePoint>(&p.point)) {
            CHECK(std::abs(b->q.rep().b) < 1e-9);
        } else {
            const auto& in = std::get<InteriorPoint>(p.point);
            CHECK(std::abs(in.phase.rep().b) < 1e-9);
            CHECK(std::abs(in.phase.rep().det()) < 1e-10);
        }
    }
    CHECK_THROWS_AS(constant_family_image(HomogPoly4::parse("x0 x3 - x1 x2"), {}, alphas, thetas, 1), Error);
    const std::vector<double> bad{0.0};
    CHECK_THROWS_AS(constant_family_image(f, {}, bad, thetas, 1), Error);
}

TEST_CASE("LabeledCloud rejects mismatched labels") {
    LabeledCloud c;
    CHECK_THROWS_AS(c.add(BasePoint{QPoint(Mat2{0.0, 1.0, 0.0, 0.0})}, CloudLabel::Cylinder), Error);
    CHECK_NOTHROW(c.add(BasePoint{QPoint(Mat2{0.0, 1.0, 0.0, 0.0})}, CloudLabel::InfinityBase));
}

TEST_CASE("witness_for_cone_point") {
    const HomogPoly4 f = HomogPoly4::parse("x1");
    const FiberPoint target(Mat2{1.0, 0.0, 0.0, 0.0});
    const HahnMat2 w = witness_for_cone_point(f, 2, target, M("t", "0", "0", "t^-1"));
    CHECK(series_close(w.e[0], parse_series("t^2")));
    CHECK(series_close(w.e[3], parse_series("t^-2")));
    CHECK(w.e[1].is_zero());
    const ConePoint p = val_symbolic(w);
    REQUIRE(std::holds_alternative<InteriorPoint>(p));
    CHECK(std::get<InteriorPoint>(p).exact_alpha == Rational(2));
    CHECK(dist_proj_r(std::get<InteriorPoint>(p).phase.cls(), target.cls()) < 1e-9);
    CHECK(vanishes_on(f, w));

    // Target height equal to the curve's, c = 1: the substitution is the identity.
    const HahnMat2 curve = M("t + 2", "0", "5", "t^-1");
    const HahnMat2 same = witness_for_cone_point(f, 1, target, curve);
    const HahnMat2 normalized = curve.scaled(invert(sqrt(curve.det(), 4), 4));
    for (std::size_t i = 0; i < 4; ++i) CHECK(series_close(same.e[i], normalized.e[i]));

    CHECK_THROWS_AS(witness_for_cone_point(f, 2, target, M("t", "0", "t", "0")), Error);
    try {
        (void)witness_for_cone_point(f, 2, FiberPoint(Mat2{0.0, 0.0, 1.0, 0.0}), M("t", "0", "0", "t^-1"));
        FAIL("expected phase mismatch");
    } catch (const Error& e) {
        CHECK(std::string(e.what()) == "curve misses target phase");
    }
}

TEST_CASE("witness via a linear curve") {
    const HomogPoly4 f = HomogPoly4::parse("x0 - x3");
    for (const QPoint& q : sample_V_cap_Q(f, 5, 2)) {
        const HahnMat2 curve = linear_curve_through(f, q, 11);
        CHECK(vanishes_on(f, curve));
        const FiberPoint target = fiber_point(q, 0.7);
        const HahnMat2 w = witness_for_cone_point(f, Rational(5, 2), target, curve);
        const ConePoint p = val_symbolic(w);
        REQUIRE(std::holds_alternative<InteriorPoint>(p));
        CHECK(std::get<InteriorPoint>(p).exact_alpha == Rational(5, 2));
        CHECK(dist_proj_r(std::get<InteriorPoint>(p).phase.cls(), target.cls()) < 1e-9);
        CHECK(vanishes_on(f, w));
    }
}

TEST_CASE("solve_for_entry") {
    const HomogPoly4 f = HomogPoly4::parse("x0 - x3");
    const HahnMat2 A = solve_for_entry(f, 3, M("t^2 + 1", "t", "3", "0"));
    CHECK(series_close(A.e[3], A.e[0]));
    const HomogPoly4 g = HomogPoly4::parse("x0 x3 + x1 x2 - 2 x0^2");
    const HahnMat2 B = solve_for_entry(g, 3, M("t + 1", "t^2", "t^-1", "0"));
    CHECK(vanishes_on(g, B));
    CHECK_THROWS_AS(solve_for_entry(g, 0, B), Error);
}

TEST_CASE("component_distance") {
    const HomogPoly4 f = HomogPoly4::parse("x1");
    const HahnMat2 A = M("t^2", "0", "t + 1", "t^-2");
    const ConePoint p = val_symbolic(A);
    CHECK(component_distance(f, A, p) < 1e-12);
    // A different point in the same stratum is far.
    const ConePoint other = InteriorPoint{2.0, FiberPoint(Mat2{0.0, 0.0, 1.0, 0.0}), std::nullopt};
    CHECK(component_distance(f, A, other) > 0.5);
    CHECK(std::isinf(component_distance(HomogPoly4::parse("x0"), A, p)));
}

TEST_CASE("example_line trichotomy") {
    ConePoint p = example_line(2, 1.0);
    REQUIRE(std::holds_alternative<InteriorPoint>(p));
    CHECK(std::get<InteriorPoint>(p).exact_alpha == Rational(2));
    CHECK(dist_proj_r(std::get<InteriorPoint>(p).phase.cls(), ProjPointR(Mat2{0.0, 1.0, 0.0, 0.0})) < 1e-14);

    p = example_line(1, cplx(0, 1));
    REQUIRE(std::holds_alternative<InteriorPoint>(p));
    CHECK(std::get<InteriorPoint>(p).exact_alpha == Rational(1));
    CHECK(dist_proj_r(std::get<InteriorPoint>(p).phase.cls(), ProjPointR(Mat2{1.0, cplx(0, 1), 0.0, 0.0})) < 1e-14);

    for (cplx c : {cplx(1.0), cplx(-3.0, 2.0)}) {
        p = example_line(Rational(1, 2), c);
        REQUIRE(std::holds_alternative<InteriorPoint>(p));
        CHECK(std::get<InteriorPoint>(p).exact_alpha == Rational(1));
        CHECK(dist_proj_r(std::get<InteriorPoint>(p).phase.cls(), ProjPointR(Mat2{1.0, 0.0, 0.0, 0.0})) < 1e-14);
    }
    CHECK(std::holds_alternative<BasePoint>(example_line_at_infinity()));
}

TEST_CASE("example_line_cloud") {
    const LabeledCloud c = example_line_cloud({{Rational(3, 2), Rational(2)}, 6, 4});
    CHECK(c.count(CloudLabel::Cylinder) == 2 * 6 + 4 * 6 + 1);
    CHECK(c.count(CloudLabel::InfinityBase) == 1);
    CHECK_THROWS_AS(example_line_cloud({{Rational(1)}, 6, 4}), Error);
}

TEST_CASE("example_quadric_classify witnesses") {
    auto r = example_quadric_classify(quadric_witness_section());
    CHECK(r.component == QuadricComponent::SectionAtOne);
    CHECK(component_name(r.component) == "{1}x s(Q\\C)");
    r = example_quadric_classify(quadric_witness_fiber(1.0, 2));
    CHECK(r.component == QuadricComponent::FiberOverC);
    REQUIRE(std::holds_alternative<InteriorPoint>(r.point));
    CHECK(std::get<InteriorPoint>(r.point).exact_alpha == Rational(2));
    r = example_quadric_classify(quadric_witness_base());
    CHECK(r.component == QuadricComponent::BaseC);
    r = example_quadric_classify(quadric_witness_section(cplx(0.3, 2.0)));
    CHECK(r.component == QuadricComponent::SectionAtOne);

    try {
        (void)example_quadric_classify(M("t", "1", "0", "t^-1"));
        FAIL("expected hypothesis error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
    }
}

TEST_CASE("example_quadric_cloud") {
    const LabeledCloud c = example_quadric_cloud({{Rational(3, 2), Rational(3)}, 4, 3, 7});
    CHECK(c.count(CloudLabel::InfinityBase) == 3);
    CHECK(c.count(CloudLabel::Cylinder) == 3 * (1 + 4 + 4 * 2));
    for (const auto& p : c.points()) {
        if (const auto* in = std::get_if<InteriorPoint>(&p.point)) {
            CHECK(in->alpha >= 1.0);
            if (in->alpha == 1.0) CHECK(std::abs(in->phase.rep().trace()) > 1e-9);
        }
    }
    const Mat2 u = [] {
        auto rng = task_rng(1, 2, 3);
        return random_su2(rng);
    }();
    CHECK(is_unitary(u, 1e-12));
    CHECK(std::abs(u.det() - 1.0) < 1e-12);
}
