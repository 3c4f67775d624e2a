#include "phasetrop/valuation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "phasetrop/error.hpp"
#include "phasetrop/hyperbolic.hpp"

namespace phasetrop {

Mat2 VertexPoint::unitary() const { return std::numbers::sqrt2 * u.rep(); }

ConeKind kind_of(const ConePoint& p) { return static_cast<ConeKind>(p.index()); }

std::string_view kind_name(ConeKind k) {
    switch (k) {
        case ConeKind::Vertex: return "vertex";
        case ConeKind::Interior: return "interior";
        case ConeKind::Base: return "base";
    }
    return "unknown";
}

ProjPointC flow_R_h(const ProjPointC& m, double h) {
    const Mat2& rep = m.rep();
    if (std::abs(rep.det()) < 1e-12) throw Error(ErrorKind::Domain, "flow_R_h: point lies on the quadric Q");
    const Polar pd = polar(normalize_det(rep));
    return ProjPointC(frac_power(pd.P, h) * pd.U);
}

namespace {

void require_known_at(const HahnMat2& m, const Rational& exponent) {
    for (const auto& s : m.e)
        if (s.trunc() && *s.trunc() >= exponent)
            throw Error(ErrorKind::Inconclusive, "inconclusive-at-truncation: leading coefficients lie below the truncation order");
}

}  // namespace

ConePoint val_symbolic(const HahnMat2& A, const Rational& depth) {
    if (A.all_zero()) {
        for (const auto& s : A.e)
            if (s.trunc()) throw Error(ErrorKind::Inconclusive, "inconclusive-at-truncation: matrix has no stored terms");
        throw Error(ErrorKind::Domain, "val_symbolic: zero matrix");
    }

    const HahnSeries det = A.det();
    if (det.is_zero()) {
        if (det.trunc())
            throw Error(ErrorKind::Inconclusive, "inconclusive-at-truncation: determinant vanishes on stored terms");
        const Rational top = A.lead_exponent();
        require_known_at(A, top);
        return BasePoint{QPoint(A.coefficients_at(top))};
    }

    const HahnSeries scale = invert(sqrt(det, depth), depth);
    const HahnMat2 normalized = A.scaled(scale);
    const Rational alpha = normalized.lead_exponent();
    require_known_at(normalized, alpha);
    const Mat2 B = normalized.coefficients_at(alpha);

    if (alpha < Rational(0)) throw Error(ErrorKind::Invariant, "negative leading exponent after det normalisation");
    if (alpha > Rational(0)) {
        const double rel_det = std::abs(B.det()) / std::norm(B.frobenius_norm());
        if (rel_det > kQuadricDetTol)
            throw Error(ErrorKind::Invariant, "leading coefficient at positive height is not singular (truncation artifact?)");
        return InteriorPoint{alpha.to_double(), FiberPoint(B), alpha};
    }
    if (std::abs(B.det() - 1.0) > 1e-8)
        throw Error(ErrorKind::Invariant, "leading coefficient at height 0 does not have determinant 1");
    return VertexPoint{coamoeba(B)};
}

ProjPointC embed_cone(const ConePoint& p) {
    return std::visit(
        [](const auto& pt) -> ProjPointC {
            using T = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<T, VertexPoint>) {
                return ProjPointC(pt.u.rep());
            } else if constexpr (std::is_same_v<T, InteriorPoint>) {
                // e^a B + e^{-a} (adj B)*, divided through by e^a.
                const Mat2& B = pt.phase.rep();
                return ProjPointC(B + std::exp(-2.0 * pt.alpha) * B.adjugate().adjoint());
            } else {
                return pt.q.cls();
            }
        },
        p);
}

ConePoint cone_coords(const ProjPointC& m) {
    const Mat2& rep = m.rep();
    const cplx det = rep.det();
    if (std::abs(det) < kQuadricDetTol) return BasePoint{QPoint(rep)};
    const Mat2 n = normalize_det(rep);
    const SVD2 s = svd2(n);
    // s1 s2 = 1, so alpha = log s1 = (log s1 - log s2) / 2.
    const double alpha = 0.5 * std::log(s.s1 / s.s2);
    if (alpha < 1e-10) return VertexPoint{ProjPointR(polar(n).U)};
    return InteriorPoint{alpha, FiberPoint(Mat2::ket_bra(s.u1, s.v1)), std::nullopt};
}

double cone_distance(const ConePoint& p, const ConePoint& q) { return dist_proj_c(embed_cone(p), embed_cone(q)); }

std::vector<double> exp2_schedule(int k_min, int k_max) {
    if (k_min < 1 || k_max <= k_min) throw Error(ErrorKind::Domain, "schedule needs 1 <= k_min < k_max");
    if (k_max > 30) throw Error(ErrorKind::Domain, "schedule exponent too large (k_max <= 30)");
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(1.0, k));
    return out;
}

NumericValuation val_numeric(const HahnMat2& A, std::span<const double> log_t_schedule, const std::optional<ConePoint>& target) {
    if (log_t_schedule.empty()) throw Error(ErrorKind::Domain, "val_numeric: empty schedule");
    for (std::size_t i = 0; i < log_t_schedule.size(); ++i) {
        if (!(log_t_schedule[i] > 1.0)) throw Error(ErrorKind::Domain, "val_numeric: schedule must have t > e");
        if (i > 0 && !(log_t_schedule[i] > log_t_schedule[i - 1]))
            throw Error(ErrorKind::Domain, "val_numeric: schedule must be strictly increasing");
    }
    std::optional<ProjPointC> target_point;
    if (target) target_point = embed_cone(*target);

    std::vector<ConvergenceRow> table;
    table.reserve(log_t_schedule.size());
    for (double L : log_t_schedule) {
        ProjPointC point = degeneration_point(A, L);
        double d;
        if (target_point) {
            d = dist_proj_c(point, *target_point);
        } else {
            d = table.empty() ? std::numeric_limits<double>::quiet_NaN() : dist_proj_c(point, table.back().point);
        }
        table.push_back({L, 1.0 / L, point, d});
    }
    ProjPointC estimate = table.back().point;
    return {estimate, std::move(table)};
}

double extrapolate_alpha(std::span<const ConvergenceRow> table) {
    if (table.size() < 2) throw Error(ErrorKind::Domain, "extrapolate_alpha needs at least two rows");
    auto height = [](const ProjPointC& p) {
        const ConePoint c = cone_coords(p);
        if (const auto* in = std::get_if<InteriorPoint>(&c)) return in->alpha;
        if (std::holds_alternative<VertexPoint>(c)) return 0.0;
        return std::numeric_limits<double>::infinity();
    };
    const ConvergenceRow& r0 = table[table.size() - 2];
    const ConvergenceRow& r1 = table[table.size() - 1];
    const double a0 = height(r0.point);
    const double a1 = height(r1.point);
    if (std::isinf(a0) || std::isinf(a1)) return std::numeric_limits<double>::infinity();
    // alpha(L) = alpha + C/L + o(1/L): eliminate C between the two rows.
    return (r1.log_t * a1 - r0.log_t * a0) / (r1.log_t - r0.log_t);
}

}  // namespace phasetrop
