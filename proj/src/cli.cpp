#include "phasetrop/cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "phasetrop/error.hpp"
#include "phasetrop/serialize.hpp"
#include "phasetrop/tropicalize.hpp"
#include "phasetrop/valuation.hpp"

namespace phasetrop::cli {

namespace {

using nlohmann::json;

struct Schedule {
    int k_min = kDefaultScheduleMin;
    int k_max = kDefaultScheduleMax;
};

Schedule parse_schedule(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "--schedule expects k_min:k_max");
    Schedule s;
    try {
        std::size_t used = 0;
        s.k_min = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("k_min");
        const std::string rest = text.substr(colon + 1);
        s.k_max = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("k_max");
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "--schedule expects integers k_min:k_max");
    }
    if (s.k_min >= s.k_max) throw Error(ErrorKind::Parse, "--schedule needs k_min < k_max");
    return s;
}

/// a:b:n with exact endpoints, n >= 1 values evenly spaced.
std::vector<Rational> parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw Error(ErrorKind::Parse, "--alpha-grid expects a:b:n");
    const Rational a = Rational::parse(text.substr(0, c1));
    const Rational b = Rational::parse(text.substr(c1 + 1, c2 - c1 - 1));
    long n = 0;
    try {
        std::size_t used = 0;
        n = std::stol(text.substr(c2 + 1), &used);
        if (used != text.size() - c2 - 1) throw std::invalid_argument("n");
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "--alpha-grid count must be an integer");
    }
    if (n < 1) throw Error(ErrorKind::Parse, "grid sizes must be >= 1");
    if (n == 1) return {a};
    std::vector<Rational> out;
    for (long i = 0; i < n; ++i) out.push_back(a + (b - a) * Rational(i) / Rational(n - 1));
    return out;
}

HahnMat2 parse_entries(const std::vector<std::string>& entries) {
    if (entries.size() != 4) throw Error(ErrorKind::Parse, "expected four matrix entries a b c d");
    return parse_matrix({entries[0], entries[1], entries[2], entries[3]});
}

Mat2 parse_constant_matrix(const std::vector<std::string>& entries) {
    const HahnMat2 m = parse_entries(entries);
    for (const auto& s : m.e)
        for (const auto& t : s.terms())
            if (!t.exponent.is_zero()) throw Error(ErrorKind::Parse, "expected constant matrix entries");
    return m.coefficients_at(Rational(0));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Domain, "cannot open output file " + path);
    f << text;
}

std::string render(const LabeledCloud& cloud, const std::string& format) {
    if (format == "csv") return to_csv(cloud);
    return to_json(cloud).dump(2) + "\n";
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return kParseError;
        case ErrorKind::Inconclusive: return kInconclusive;
        case ErrorKind::Hypothesis: return kHypothesis;
        default: return kFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase tropicalization of PSL2 families"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 0;
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "Random seed");

    std::vector<std::string> entries;
    std::string depth_text = "4";

    auto* val = app.add_subcommand("val", "Symbolic matrix valuation of (a b; c d)");
    val->add_option("entries", entries, "Four series a b c d")->required()->expected(4);
    val->add_option("--depth", depth_text, "Window kept below leading exponents");

    std::string schedule_text = std::to_string(kDefaultScheduleMin) + ":" + std::to_string(kDefaultScheduleMax);
    std::string target_text;
    auto* limit = app.add_subcommand("limit", "Convergence table of R_{1/log t}[A(t)], t = exp(2^k)");
    limit->add_option("entries", entries, "Four series a b c d")->required()->expected(4);
    limit->add_option("--schedule", schedule_text, "k_min:k_max");
    limit->add_option("--target", target_text, "Target cone point as JSON (default: the symbolic valuation)");
    limit->add_option("--depth", depth_text, "Window kept below leading exponents");

    std::string example_name;
    std::string alpha_grid_text;
    std::size_t theta_count = 12;
    std::size_t modulus_count = 8;
    std::size_t orbit_count = 6;
    auto* example = app.add_subcommand("example", "Point cloud of a shipped example");
    example->add_option("name", example_name, "line | quadric")->required()->check(CLI::IsMember({"line", "quadric"}));
    example->add_option("--alpha-grid", alpha_grid_text, "a:b:n heights (> 1) for the ray / fibre witnesses");
    example->add_option("--theta-grid", theta_count, "Angles per circle")->check(CLI::PositiveNumber);
    example->add_option("--moduli", modulus_count, "Moduli |c| on the gamma = 1 section (line)")->check(CLI::PositiveNumber);
    example->add_option("--orbits", orbit_count, "SU(2) conjugates per witness (quadric)")->check(CLI::PositiveNumber);

    std::string poly_text;
    ComponentCounts counts;
    auto* family = app.add_subcommand("family", "Image of the constant family V(f)");
    family->add_option("poly", poly_text, "Homogeneous polynomial in x0..x3")->required();
    family->add_option("--alpha-grid", alpha_grid_text, "a:b:n cylinder heights (> 0)");
    family->add_option("--theta-grid", theta_count, "Circle angles in [0, pi)")->check(CLI::PositiveNumber);
    family->add_option("--floor", counts.floor, "Samples of V off Q");
    family->add_option("--quadric", counts.quadric, "Samples of V cap Q")->check(CLI::PositiveNumber);

    auto* fiber = app.add_subcommand("fiber", "Circle of phases over a point of Q");
    fiber->add_option("entries", entries, "Four constant entries of a rank-one matrix")->required()->expected(4);
    fiber->add_option("--theta-grid", theta_count, "Angles in [0, pi)")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }

    try {
        const Rational depth = Rational::parse(depth_text);
        if (*val) {
            const ConePoint p = val_symbolic(parse_entries(entries), depth);
            json j = to_json(p);
            j["embedding"] = to_json(embed_cone(p).rep());
            emit(j.dump(2) + "\n", out_path, out);
        } else if (*limit) {
            const HahnMat2 A = parse_entries(entries);
            const Schedule s = parse_schedule(schedule_text);
            const ConePoint target =
                target_text.empty() ? val_symbolic(A, depth) : cone_point_from_json(json::parse(target_text));
            const auto schedule = exp2_schedule(s.k_min, s.k_max);
            const NumericValuation nv = val_numeric(A, schedule, target);
            emit(to_csv(nv.table), out_path, out);
        } else if (*example) {
            const auto grid = alpha_grid_text.empty() ? parse_grid("3/2:4:6") : parse_grid(alpha_grid_text);
            LabeledCloud cloud;
            if (example_name == "line") {
                cloud = example_line_cloud({grid, theta_count, modulus_count});
            } else {
                cloud = example_quadric_cloud({grid, theta_count, orbit_count, seed});
            }
            emit(render(cloud, format), out_path, out);
        } else if (*family) {
            const HomogPoly4 f = HomogPoly4::parse(poly_text);
            std::vector<double> alphas;
            for (const Rational& a : alpha_grid_text.empty() ? parse_grid("1/2:4:8") : parse_grid(alpha_grid_text))
                alphas.push_back(a.to_double());
            std::vector<double> thetas;
            for (std::size_t j = 0; j < theta_count; ++j)
                thetas.push_back(std::numbers::pi * static_cast<double>(j) / static_cast<double>(theta_count));
            emit(render(constant_family_image(f, counts, alphas, thetas, seed), format), out_path, out);
        } else if (*fiber) {
            const QPoint q(parse_constant_matrix(entries));
            json pts = json::array();
            for (std::size_t j = 0; j < theta_count; ++j) {
                const double th = std::numbers::pi * static_cast<double>(j) / static_cast<double>(theta_count);
                pts.push_back({{"theta", th}, {"matrix", to_json(fiber_point(q, th).rep())}});
            }
            emit(json{{"base", to_json(q.rep())}, {"fiber", std::move(pts)}}.dump(2) + "\n", out_path, out);
        }
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return kOk;
}

}  // namespace phasetrop::cli
