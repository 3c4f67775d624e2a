#include "phasetrop/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phasetrop/error.hpp"

namespace phasetrop {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

json to_json(const Mat2& m) {
    json out = json::array();
    for (const cplx& z : m.entries()) out.push_back({z.real(), z.imag()});
    return out;
}

Mat2 mat2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::Parse, "matrix must be an array of four [re, im] pairs");
    std::array<cplx, 4> e;
    for (std::size_t i = 0; i < 4; ++i) {
        const json& z = j[i];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
            throw Error(ErrorKind::Parse, "matrix entry must be [re, im]");
        e[i] = {z[0].get<double>(), z[1].get<double>()};
    }
    return Mat2::from_entries(e);
}

json to_json(const ConePoint& p) {
    json out;
    out["kind"] = std::string(kind_name(kind_of(p)));
    std::visit(
        [&out](const auto& pt) {
            using T = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<T, VertexPoint>) {
                out["alpha"] = 0.0;
                out["matrix"] = to_json(pt.u.rep());
            } else if constexpr (std::is_same_v<T, InteriorPoint>) {
                out["alpha"] = pt.alpha;
                if (pt.exact_alpha) out["alpha_exact"] = pt.exact_alpha->to_string();
                out["matrix"] = to_json(pt.phase.rep());
            } else {
                out["alpha"] = "inf";
                out["matrix"] = to_json(pt.q.rep());
            }
        },
        p);
    return out;
}

ConePoint cone_point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("matrix"))
        throw Error(ErrorKind::Parse, "cone point needs \"kind\" and \"matrix\"");
    const std::string kind = j.at("kind").get<std::string>();
    const Mat2 m = mat2_from_json(j.at("matrix"));
    if (kind == "vertex") return VertexPoint{ProjPointR(m)};
    if (kind == "base") return BasePoint{QPoint(m)};
    if (kind != "interior") throw Error(ErrorKind::Parse, "unknown cone point kind: " + kind);
    if (!j.contains("alpha") || !j.at("alpha").is_number()) throw Error(ErrorKind::Parse, "interior point needs a numeric alpha");
    InteriorPoint in{j.at("alpha").get<double>(), FiberPoint(m), std::nullopt};
    if (!(in.alpha > 0.0)) throw Error(ErrorKind::Parse, "interior point needs alpha > 0");
    if (j.contains("alpha_exact")) in.exact_alpha = Rational::parse(j.at("alpha_exact").get<std::string>());
    return in;
}

namespace {

double riemann_angle(const Vec2& v) { return 2.0 * std::atan2(std::abs(v.x1), std::abs(v.x0)); }

double mod_pi(double x) {
    double r = std::fmod(x, std::numbers::pi);
    if (r < 0) r += std::numbers::pi;
    return r >= std::numbers::pi ? 0.0 : r;
}

}  // namespace

std::array<double, 3> projection(const ConePoint& p) {
    return std::visit(
        [](const auto& pt) -> std::array<double, 3> {
            using T = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<T, VertexPoint>) {
                const Mat2 u = pt.unitary();
                return {0.0, 2.0 * std::atan2(std::abs(u.c), std::abs(u.a)), mod_pi(std::arg(u.a))};
            } else if constexpr (std::is_same_v<T, InteriorPoint>) {
                const Vec2 col = unsegre(pt.phase.base()).first.vector();
                return {pt.alpha, riemann_angle(col), fiber_angle(pt.phase)};
            } else {
                const Vec2 col = unsegre(pt.q).first.vector();
                return {std::numeric_limits<double>::infinity(), riemann_angle(col), 0.0};
            }
        },
        p);
}

namespace {

json meta_json(const std::map<std::string, MetaValue>& meta) {
    json out = json::object();
    for (const auto& [k, v] : meta) std::visit([&out, &k](const auto& x) { out[k] = x; }, v);
    return out;
}

}  // namespace

json to_json(const LabeledCloud& cloud) {
    json pts = json::array();
    for (const CloudPoint& cp : cloud.points()) {
        json j = to_json(cp.point);
        j["label"] = std::string(label_name(cp.label));
        j["meta"] = meta_json(cp.meta);
        const auto pr = projection(cp.point);
        j["projection"] = {std::isinf(pr[0]) ? json("inf") : json(pr[0]), pr[1], pr[2]};
        pts.push_back(std::move(j));
    }
    json counts = json::object();
    for (CloudLabel l : {CloudLabel::CoamoebaFloor, CloudLabel::Cylinder, CloudLabel::InfinityBase})
        counts[std::string(label_name(l))] = cloud.count(l);
    return {{"points", std::move(pts)}, {"counts", std::move(counts)}};
}

std::string to_csv(const LabeledCloud& cloud) {
    std::ostringstream os;
    os << "label,kind,alpha,phi,psi,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im,meta\n";
    for (const CloudPoint& cp : cloud.points()) {
        const auto pr = projection(cp.point);
        os << label_name(cp.label) << ',' << kind_name(kind_of(cp.point));
        for (double x : pr) os << ',' << format_double(x);
        const json m = to_json(cp.point).at("matrix");
        for (const auto& z : m) os << ',' << format_double(z[0].get<double>()) << ',' << format_double(z[1].get<double>());
        // Meta as a JSON object; quotes doubled for CSV.
        std::string meta = meta_json(cp.meta).dump();
        std::string quoted;
        for (char ch : meta) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        os << ",\"" << quoted << "\"\n";
    }
    return os.str();
}

std::string to_csv(std::span<const ConvergenceRow> table) {
    std::ostringstream os;
    os << "t,h,dist\n";
    for (const ConvergenceRow& r : table) {
        // t = exp(L) = m * 10^e with e = floor(L / ln 10).
        const double l10 = r.log_t / std::numbers::ln10;
        double e = std::floor(l10);
        double mant = std::pow(10.0, l10 - e);
        if (mant >= 9.9999995) {
            mant /= 10.0;
            e += 1.0;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6fe%+.0f", mant, e);
        os << buf << ',' << format_double(r.h) << ',' << format_double(r.dist) << '\n';
    }
    return os.str();
}

}  // namespace phasetrop
