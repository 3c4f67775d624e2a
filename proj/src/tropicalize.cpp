#include "phasetrop/tropicalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phasetrop/error.hpp"
#include "phasetrop/hyperbolic.hpp"

namespace phasetrop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

cplx gaussian_c(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    const double re = n(rng);
    return {re, n(rng)};
}

Mat2 gaussian_mat(std::mt19937_64& rng) {
    const cplx a = gaussian_c(rng);
    const cplx b = gaussian_c(rng);
    const cplx c = gaussian_c(rng);
    return {a, b, c, gaussian_c(rng)};
}

Vec2 gaussian_vec(std::mt19937_64& rng) {
    const cplx x0 = gaussian_c(rng);
    return {x0, gaussian_c(rng)};
}

double rel_det(const Mat2& m) { return std::abs(m.det()) / std::norm(m.frobenius_norm()); }

// Index of the highest coefficient above tol * max |c|, or -1 when all vanish.
int effective_degree(const std::vector<cplx>& ascending, double tol) {
    double scale = 0.0;
    for (const auto& c : ascending) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return -1;
    for (int i = static_cast<int>(ascending.size()) - 1; i >= 0; --i)
        if (std::abs(ascending[static_cast<std::size_t>(i)]) > tol * scale) return i;
    return -1;
}

std::vector<cplx> line_roots(const std::vector<cplx>& ascending, int deg) {
    std::vector<cplx> desc(ascending.begin(), ascending.begin() + deg + 1);
    std::reverse(desc.begin(), desc.end());
    return roots_univariate(desc);
}

HahnSeries t_power(cplx c, const Rational& e) { return HahnSeries::monomial(c, e); }

}  // namespace

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t x = splitmix64(seed);
    x = splitmix64(x ^ stream);
    x = splitmix64(x ^ index);
    return std::mt19937_64(x);
}

VarietySamples sample_variety(const HomogPoly4& f, std::size_t n, std::uint64_t seed) {
    VarietySamples out;
    const std::size_t cap = std::max<std::size_t>(100, 100 * n);
    for (std::size_t i = 0; i < cap && out.off_q.size() + out.on_q.size() < n; ++i) {
        auto rng = task_rng(seed, 1, i);
        const Mat2 p = gaussian_mat(rng);
        const Mat2 q = gaussian_mat(rng);
        const auto coeffs = f.restrict_to_line(p, q);
        // A line meeting V at infinity or lying inside V is a degenerate draw.
        if (effective_degree(coeffs, 1e-12) != static_cast<int>(f.degree())) continue;
        std::vector<cplx> roots;
        try {
            roots = line_roots(coeffs, static_cast<int>(f.degree()));
        } catch (const Error&) {
            continue;
        }
        for (const cplx& s : roots) {
            if (out.off_q.size() + out.on_q.size() >= n) break;
            const Mat2 m = p + s * q;
            if (!m.is_finite() || m.frobenius_norm() == 0.0 || f.residual(m) >= 1e-8) continue;
            ProjPointC point(m);
            if (std::abs(point.rep().det()) < kQuadricDetTol)
                out.on_q.push_back(point);
            else
                out.off_q.push_back(point);
        }
    }
    if (out.off_q.size() + out.on_q.size() < n)
        throw Error(ErrorKind::Convergence, "sample_variety: too many degenerate line draws");
    return out;
}

bool vanishes_on_quadric(const HomogPoly4& f, std::uint64_t seed) {
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto rng = task_rng(seed, 2, i);
        const Vec2 x = gaussian_vec(rng).normalized();
        const Vec2 y = gaussian_vec(rng).normalized();
        if (f.residual(Mat2::outer(x, y)) >= 1e-10) return false;
    }
    return true;
}

std::vector<QPoint> sample_V_cap_Q(const HomogPoly4& f, std::size_t n, std::uint64_t seed) {
    if (vanishes_on_quadric(f, seed)) throw Error(ErrorKind::Hypothesis, "component inside Q");
    std::vector<QPoint> out;
    const std::size_t cap = std::max<std::size_t>(100, 100 * n);
    const Vec2 e0{1.0, 0.0};
    const Vec2 e1{0.0, 1.0};
    for (std::size_t i = 0; i < cap && out.size() < n; ++i) {
        auto rng = task_rng(seed, 3, i);
        const Vec2 fixed = gaussian_vec(rng).normalized();
        // Segre line through x y^T with one factor fixed: y = (1, s) or x = (1, s).
        Mat2 p, q;
        if (i % 2 == 0) {
            p = Mat2::outer(fixed, e0);
            q = Mat2::outer(fixed, e1);
        } else {
            p = Mat2::outer(e0, fixed);
            q = Mat2::outer(e1, fixed);
        }
        const auto coeffs = f.restrict_to_line(p, q);
        const int deg = effective_degree(coeffs, 1e-12);
        std::vector<Mat2> candidates;
        if (deg < 0) {
            // The whole Segre line lies in V.
            std::normal_distribution<double> nd;
            candidates.push_back(p + nd(rng) * q);
        } else {
            if (deg < static_cast<int>(f.degree())) candidates.push_back(q);
            if (deg > 0) {
                std::vector<cplx> roots;
                try {
                    roots = line_roots(coeffs, deg);
                } catch (const Error&) {
                    continue;
                }
                for (const cplx& s : roots) candidates.push_back(p + s * q);
            }
        }
        for (const Mat2& m : candidates) {
            if (out.size() >= n) break;
            if (!m.is_finite() || f.residual(m) >= 1e-8) continue;
            out.emplace_back(m);
        }
    }
    if (out.size() < n) throw Error(ErrorKind::Convergence, "sample_V_cap_Q: too many degenerate draws");
    return out;
}

std::string_view label_name(CloudLabel l) {
    switch (l) {
        case CloudLabel::CoamoebaFloor: return "coamoeba-floor";
        case CloudLabel::Cylinder: return "cylinder";
        case CloudLabel::InfinityBase: return "infinity-base";
    }
    return "unknown";
}

ConeKind label_kind(CloudLabel l) {
    switch (l) {
        case CloudLabel::CoamoebaFloor: return ConeKind::Vertex;
        case CloudLabel::Cylinder: return ConeKind::Interior;
        case CloudLabel::InfinityBase: return ConeKind::Base;
    }
    return ConeKind::Vertex;
}

void LabeledCloud::add(ConePoint p, CloudLabel label, std::map<std::string, MetaValue> meta) {
    if (kind_of(p) != label_kind(label))
        throw Error(ErrorKind::Invariant, std::string("cloud label ") + std::string(label_name(label)) + " does not match a " +
                                              std::string(kind_name(kind_of(p))) + " point");
    points_.push_back({std::move(p), label, std::move(meta)});
}

std::size_t LabeledCloud::count(CloudLabel l) const {
    return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [l](const auto& p) { return p.label == l; }));
}

LabeledCloud constant_family_image(const HomogPoly4& f, const ComponentCounts& counts, std::span<const double> alpha_grid,
                                   std::span<const double> theta_grid, std::uint64_t seed) {
    for (double a : alpha_grid)
        if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::Domain, "alpha grid values must be finite and > 0");
    for (double th : theta_grid)
        if (!(th >= 0.0 && th < std::numbers::pi)) throw Error(ErrorKind::Domain, "theta grid values must lie in [0, pi)");

    const std::vector<QPoint> base = sample_V_cap_Q(f, counts.quadric, splitmix64(seed ^ 0x51ULL));
    LabeledCloud cloud;
    if (counts.floor > 0) {
        const VarietySamples samples = sample_variety(f, counts.floor, seed);
        for (std::size_t i = 0; i < samples.off_q.size(); ++i)
            cloud.add(VertexPoint{coamoeba(normalize_det(samples.off_q[i].rep()))}, CloudLabel::CoamoebaFloor,
                      {{"sample", static_cast<double>(i)}});
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (double a : alpha_grid)
            for (double th : theta_grid)
                cloud.add(InteriorPoint{a, fiber_point(base[i], th), std::nullopt}, CloudLabel::Cylinder,
                          {{"sample", static_cast<double>(i)}, {"alpha", a}, {"theta", th}});
        cloud.add(BasePoint{base[i]}, CloudLabel::InfinityBase, {{"sample", static_cast<double>(i)}});
    }
    return cloud;
}

double component_distance(const HomogPoly4& f, const HahnMat2& A, const ConePoint& val, double residual_tol) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const Mat2 B = A.coefficients_at(A.lead_exponent());
    if (f.residual(B) >= residual_tol) return inf;
    const bool on_q = rel_det(B) <= kQuadricDetTol;
    return std::visit(
        [&](const auto& pt) -> double {
            using T = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<T, VertexPoint>) {
                if (on_q) return inf;
                return dist_proj_r(pt.u, ProjPointR(polar(normalize_det(B)).U));
            } else if constexpr (std::is_same_v<T, InteriorPoint>) {
                if (!on_q) return inf;
                return dist_proj_c(pt.phase.cls().complex_class(), ProjPointC(B));
            } else {
                if (!on_q) return inf;
                return dist_proj_c(pt.q.cls(), ProjPointC(B));
            }
        },
        val);
}

bool vanishes_on(const HomogPoly4& f, const HahnMat2& A) {
    double entry_scale = 0.0;
    for (const auto& s : A.e)
        for (const auto& term : s.terms()) entry_scale = std::max(entry_scale, std::abs(term.coeff));
    const HahnSeries value = f(A);
    if (entry_scale == 0.0) return value.is_zero();
    const double scale = f.coefficient_scale() * std::pow(entry_scale, static_cast<double>(f.degree()));
    return std::all_of(value.terms().begin(), value.terms().end(),
                       [scale](const HahnTerm& t) { return std::abs(t.coeff) <= kSeriesVanishTol * scale; });
}

HahnMat2 witness_for_cone_point(const HomogPoly4& f, const Rational& alpha, const FiberPoint& phase, const HahnMat2& curve,
                                const Rational& depth) {
    if (!(alpha > Rational(0))) throw Error(ErrorKind::Domain, "witness target must have alpha > 0");
    if (!vanishes_on(f, curve)) throw Error(ErrorKind::Hypothesis, "curve is not contained in V");
    const HahnSeries D = curve.det();
    if (D.is_zero()) {
        if (D.trunc()) throw Error(ErrorKind::Inconclusive, "inconclusive-at-truncation: curve determinant vanishes on stored terms");
        throw Error(ErrorKind::Hypothesis, "curve lies inside Q");
    }
    const HahnMat2 N = curve.scaled(invert(sqrt(D, depth), depth));
    const Rational gamma = N.lead_exponent();
    if (!(gamma > Rational(0))) throw Error(ErrorKind::Hypothesis, "curve does not approach Q");
    const Mat2 L = N.coefficients_at(gamma);
    const Mat2& B = phase.rep();
    const cplx c = frobenius_inner(B, L) / frobenius_inner(B, B);
    if (frobenius_distance(L, c * B) > 1e-9 * L.frobenius_norm() || c == cplx(0.0))
        throw Error(ErrorKind::Hypothesis, "curve misses target phase");
    const cplx sigma = std::log(c);
    HahnMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = reparametrize(N.e[i], gamma, sigma, alpha);
    return out;
}

HahnMat2 linear_curve_through(const HomogPoly4& f, const QPoint& q, std::uint64_t seed) {
    if (f.degree() != 1) throw Error(ErrorKind::Domain, "linear_curve_through needs a polynomial of degree 1");
    if (f.residual(q.rep()) >= 1e-8) throw Error(ErrorKind::Domain, "point is not on V");
    std::array<cplx, 4> w{};
    for (const auto& [e, c] : f.monomials())
        for (std::size_t k = 0; k < 4; ++k)
            if (e[k] == 1) w[k] = c;
    double w2 = 0.0;
    for (const auto& x : w) w2 += std::norm(x);
    auto rng = task_rng(seed, 4, 0);
    const Mat2 R = gaussian_mat(rng);
    const cplx fr = f(R);
    auto m = R.entries();
    for (std::size_t k = 0; k < 4; ++k) m[k] -= fr / w2 * std::conj(w[k]);
    const auto qe = q.rep().entries();
    HahnMat2 out;
    for (std::size_t k = 0; k < 4; ++k) out.e[k] = t_power(qe[k], Rational(1)) + HahnSeries::constant(m[k]);
    return out;
}

HahnMat2 solve_for_entry(const HomogPoly4& f, std::size_t k, HahnMat2 A, const Rational& depth) {
    if (k > 3) throw Error(ErrorKind::Domain, "entry index must be 0..3");
    if (f.degree_in(k) != 1) throw Error(ErrorKind::Domain, "polynomial must have degree 1 in the solved entry");
    // f = x_k g + h with g, h free of x_k.
    HahnSeries g, h;
    for (const auto& [e, c] : f.monomials()) {
        HahnSeries term = HahnSeries::constant(c);
        for (std::size_t j = 0; j < 4; ++j)
            if (j != k && e[j] > 0) term = term * pow(A.e[j], e[j]);
        if (e[k] == 1)
            g = g + term;
        else
            h = h + term;
    }
    if (g.is_zero()) throw Error(ErrorKind::Domain, "solved entry has a vanishing coefficient");
    A.e[k] = h.is_exact_zero() ? HahnSeries() : -(h * invert(g, depth));
    return A;
}

HahnMat2 example_line_matrix(const Rational& gamma, cplx c) {
    return {{t_power(1.0, Rational(1)), t_power(c, gamma), HahnSeries(), t_power(1.0, Rational(-1))}};
}

ConePoint example_line(const Rational& gamma, cplx c) {
    if (c == cplx(0.0)) throw Error(ErrorKind::Domain, "example_line needs c != 0");
    return val_symbolic(example_line_matrix(gamma, c));
}

ConePoint example_line_at_infinity() { return val_symbolic(HahnMat2::constant({0.0, 1.0, 0.0, 0.0})); }

LabeledCloud example_line_cloud(const LineCloudGrid& grid) {
    LabeledCloud cloud;
    const double pi = std::numbers::pi;
    for (const Rational& g : grid.gammas) {
        if (!(g > Rational(1))) throw Error(ErrorKind::Domain, "line grid gammas must exceed 1");
        for (std::size_t j = 0; j < grid.theta_count; ++j) {
            const double th = pi * static_cast<double>(j) / static_cast<double>(grid.theta_count);
            cloud.add(example_line(g, std::polar(1.0, th)), CloudLabel::Cylinder,
                      {{"case", std::string("ray")}, {"gamma", g.to_double()}, {"theta", th}});
        }
    }
    // gamma = 1: |c| ranges over (0, inf) through tan of an open grid in (0, pi/2).
    for (std::size_t m = 0; m < grid.modulus_count; ++m) {
        const double phi = static_cast<double>(m + 1) * pi / (2.0 * static_cast<double>(grid.modulus_count + 1));
        for (std::size_t j = 0; j < grid.theta_count; ++j) {
            const double th = 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid.theta_count);
            cloud.add(example_line(Rational(1), std::polar(std::tan(phi), th)), CloudLabel::Cylinder,
                      {{"case", std::string("section")}, {"modulus", std::tan(phi)}, {"theta", th}});
        }
    }
    cloud.add(example_line(Rational(1, 2), 1.0), CloudLabel::Cylinder, {{"case", std::string("point")}});
    cloud.add(example_line_at_infinity(), CloudLabel::InfinityBase, {{"case", std::string("base")}});
    return cloud;
}

std::string_view component_name(QuadricComponent c) {
    switch (c) {
        case QuadricComponent::SectionAtOne: return "{1}x s(Q\\C)";
        case QuadricComponent::FiberOverC: return "(1,inf)x S|_C";
        case QuadricComponent::BaseC: return "{inf}x C";
    }
    return "unknown";
}

namespace {

[[noreturn]] void falsified(const HahnMat2& A, const ConePoint& p, const std::string& why) {
    std::ostringstream os;
    os << "falsification: " << why << "; kind=" << kind_name(kind_of(p));
    if (const auto* in = std::get_if<InteriorPoint>(&p)) os << " alpha=" << in->alpha;
    os << "; A = (" << to_string(A.e[0]) << ", " << to_string(A.e[1]) << "; " << to_string(A.e[2]) << ", "
       << to_string(A.e[3]) << ")";
    throw Error(ErrorKind::Invariant, os.str());
}

double rel_trace(const Mat2& m) { return std::abs(m.trace()) / m.frobenius_norm(); }

}  // namespace

QuadricClassification example_quadric_classify(const HahnMat2& A, const Rational& depth) {
    const HahnSeries lhs = t_power(1.0, Rational(2)) * A.det();
    const HahnSeries tr = A.trace();
    const HahnSeries rhs = tr * tr;
    double scale = 0.0;
    for (const auto* s : {&lhs, &rhs})
        for (const auto& t : s->terms()) scale = std::max(scale, std::abs(t.coeff));
    const HahnSeries residual = lhs - rhs;
    for (const auto& t : residual.terms())
        if (std::abs(t.coeff) > 1e-9 * scale)
            throw Error(ErrorKind::Hypothesis, "matrix is not on the surface t^2 det A = (tr A)^2; residual " + to_string(residual));

    ConePoint p = val_symbolic(A, depth);
    if (std::holds_alternative<VertexPoint>(p)) falsified(A, p, "height 0 point on the surface");
    if (const auto* b = std::get_if<BasePoint>(&p)) {
        if (rel_trace(b->q.rep()) > 1e-9) falsified(A, p, "base point off the curve C");
        return {QuadricComponent::BaseC, std::move(p)};
    }
    const auto& in = std::get<InteriorPoint>(p);
    const Rational alpha = in.exact_alpha.value_or(Rational(0));
    if (alpha < Rational(1)) falsified(A, p, "height below 1");
    const Mat2& B = in.phase.rep();
    if (alpha == Rational(1)) {
        if (rel_trace(B) <= 1e-9) falsified(A, p, "height 1 with a trace-free phase");
        if (dist_proj_r(in.phase.cls(), section_s(in.phase.base()).cls()) > 1e-9)
            falsified(A, p, "height 1 phase differs from the section s");
        return {QuadricComponent::SectionAtOne, std::move(p)};
    }
    if (rel_trace(B) > 1e-9) falsified(A, p, "height above 1 with phase off the curve C");
    return {QuadricComponent::FiberOverC, std::move(p)};
}

HahnMat2 quadric_witness_section() {
    const HahnSeries tinv = t_power(1.0, Rational(-1));
    return {{t_power(1.0, Rational(1)) - tinv, -tinv, tinv, tinv}};
}

HahnMat2 quadric_witness_section(cplx sigma) {
    if (sigma == cplx(0.0)) throw Error(ErrorKind::Domain, "sigma must be non-zero");
    const HahnSeries tinv = t_power(1.0, Rational(-1));
    return {{t_power(1.0, Rational(1)) - tinv, t_power(1.0 / sigma, Rational(-3)), t_power(-sigma, Rational(1)), tinv}};
}

HahnMat2 quadric_witness_fiber(cplx sigma, const Rational& alpha) {
    if (sigma == cplx(0.0)) throw Error(ErrorKind::Domain, "sigma must be non-zero");
    return {{t_power(1.0, Rational(1)), t_power(sigma, alpha), t_power(-1.0 / sigma, -alpha), HahnSeries()}};
}

HahnMat2 quadric_witness_base() { return HahnMat2::constant({0.0, 1.0, 0.0, 0.0}); }

Mat2 random_su2(std::mt19937_64& rng) {
    Vec2 v = gaussian_vec(rng);
    while (v.norm() < 1e-8) v = gaussian_vec(rng);
    v = v.normalized();
    return {v.x0, -std::conj(v.x1), v.x1, std::conj(v.x0)};
}

LabeledCloud example_quadric_cloud(const QuadricCloudGrid& grid) {
    LabeledCloud cloud;
    const double pi = std::numbers::pi;
    auto label_for = [](QuadricComponent c) {
        switch (c) {
            case QuadricComponent::BaseC: return CloudLabel::InfinityBase;
            default: return CloudLabel::Cylinder;
        }
    };
    for (std::size_t o = 0; o < std::max<std::size_t>(grid.orbit_count, 1); ++o) {
        Mat2 U = Mat2::identity();
        if (o > 0) {
            auto rng = task_rng(grid.seed, 5, o);
            U = random_su2(rng);
        }
        const Mat2 Ui = U.adjoint();
        auto add = [&](const HahnMat2& A, std::map<std::string, MetaValue> meta) {
            QuadricClassification c = example_quadric_classify(U * A * Ui);
            meta["component"] = std::string(component_name(c.component));
            meta["orbit"] = static_cast<double>(o);
            cloud.add(std::move(c.point), label_for(c.component), std::move(meta));
        };
        add(quadric_witness_section(), {{"witness", std::string("section")}});
        for (std::size_t j = 0; j < grid.theta_count; ++j) {
            const double th = 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid.theta_count);
            add(quadric_witness_section(std::polar(1.0, th)), {{"witness", std::string("section")}, {"theta", th}});
            for (const Rational& a : grid.alphas) {
                if (!(a > Rational(1))) throw Error(ErrorKind::Domain, "quadric grid alphas must exceed 1");
                add(quadric_witness_fiber(std::polar(1.0, th), a),
                    {{"witness", std::string("fiber")}, {"alpha", a.to_double()}, {"theta", th}});
            }
        }
        add(quadric_witness_base(), {{"witness", std::string("base")}});
    }
    return cloud;
}

}  // namespace phasetrop
