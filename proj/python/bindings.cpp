#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "phasetrop/error.hpp"
#include "phasetrop/serialize.hpp"
#include "phasetrop/tropicalize.hpp"
#include "phasetrop/valuation.hpp"

namespace py = pybind11;
using namespace phasetrop;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python wrapper decodes it.
std::string dump(const json& j) { return j.dump(); }

HahnMat2 matrix_from(const std::array<std::string, 4>& entries) { return parse_matrix(entries); }

std::vector<Rational> rationals(const std::vector<std::string>& texts) {
    std::vector<Rational> out;
    for (const auto& s : texts) out.push_back(Rational::parse(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(_phasetrop, m) {
    m.doc() = "PSL2 phase tropicalization";

    static py::exception<Error> base_error(m, "PhasetropError");
    static py::exception<Error> parse_error(m, "ParseError", base_error.ptr());
    static py::exception<Error> domain_error(m, "DomainError", base_error.ptr());
    static py::exception<Error> inconclusive_error(m, "InconclusiveError", base_error.ptr());
    static py::exception<Error> hypothesis_error(m, "HypothesisError", base_error.ptr());
    static py::exception<Error> convergence_error(m, "ConvergenceError", base_error.ptr());
    static py::exception<Error> invariant_error(m, "InvariantError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.kind()) {
                case ErrorKind::Parse: parse_error(e.what()); break;
                case ErrorKind::Domain: domain_error(e.what()); break;
                case ErrorKind::Inconclusive: inconclusive_error(e.what()); break;
                case ErrorKind::Hypothesis: hypothesis_error(e.what()); break;
                case ErrorKind::Convergence: convergence_error(e.what()); break;
                case ErrorKind::Invariant: invariant_error(e.what()); break;
            }
        }
    });

    m.def("normalize_series", [](const std::string& text) { return to_string(parse_series(text)); },
          "Parse a series and print it in canonical form.", py::arg("text"));

    m.def("val", [](const std::array<std::string, 4>& entries, const std::string& depth) {
              const ConePoint p = val_symbolic(matrix_from(entries), Rational::parse(depth));
              json j = to_json(p);
              j["embedding"] = to_json(embed_cone(p).rep());
              return dump(j);
          },
          py::arg("entries"), py::arg("depth") = "4");

    m.def("val_numeric",
          [](const std::array<std::string, 4>& entries, int k_min, int k_max, const std::optional<std::string>& target,
             const std::string& depth) {
              const HahnMat2 A = matrix_from(entries);
              const ConePoint tgt =
                  target ? cone_point_from_json(json::parse(*target)) : val_symbolic(A, Rational::parse(depth));
              const auto schedule = exp2_schedule(k_min, k_max);
              const NumericValuation nv = val_numeric(A, schedule, tgt);
              json rows = json::array();
              for (const auto& r : nv.table)
                  rows.push_back({{"log_t", r.log_t}, {"h", r.h}, {"dist", r.dist}, {"point", to_json(r.point.rep())}});
              return dump({{"estimate", to_json(nv.estimate.rep())},
                           {"alpha", extrapolate_alpha(nv.table)},
                           {"rows", rows}});
          },
          py::arg("entries"), py::arg("k_min") = kDefaultScheduleMin, py::arg("k_max") = kDefaultScheduleMax,
          py::arg("target") = std::nullopt, py::arg("depth") = "4");

    m.def("cone_distance",
          [](const std::string& a, const std::string& b) {
              return cone_distance(cone_point_from_json(json::parse(a)), cone_point_from_json(json::parse(b)));
          },
          py::arg("a"), py::arg("b"));

    m.def("example_line", [](const std::string& gamma, cplx c) { return dump(to_json(example_line(Rational::parse(gamma), c))); },
          py::arg("gamma"), py::arg("c"));

    m.def("example_line_cloud",
          [](const std::vector<std::string>& gammas, std::size_t theta_count, std::size_t modulus_count) {
              return dump(to_json(example_line_cloud({rationals(gammas), theta_count, modulus_count})));
          },
          py::arg("gammas"), py::arg("theta_count") = 12, py::arg("modulus_count") = 8);

    m.def("quadric_classify",
          [](const std::array<std::string, 4>& entries, const std::string& depth) {
              const auto c = example_quadric_classify(matrix_from(entries), Rational::parse(depth));
              return dump({{"component", std::string(component_name(c.component))}, {"point", to_json(c.point)}});
          },
          py::arg("entries"), py::arg("depth") = "4");

    m.def("example_quadric_cloud",
          [](const std::vector<std::string>& alphas, std::size_t theta_count, std::size_t orbit_count, std::uint64_t seed) {
              return dump(to_json(example_quadric_cloud({rationals(alphas), theta_count, orbit_count, seed})));
          },
          py::arg("alphas"), py::arg("theta_count") = 12, py::arg("orbit_count") = 6, py::arg("seed") = 0);

    m.def("family",
          [](const std::string& poly, const std::vector<double>& alpha_grid, const std::vector<double>& theta_grid,
             std::size_t floor, std::size_t quadric, std::uint64_t seed) {
              const HomogPoly4 f = HomogPoly4::parse(poly);
              return dump(to_json(constant_family_image(f, {floor, quadric}, alpha_grid, theta_grid, seed)));
          },
          py::arg("poly"), py::arg("alpha_grid"), py::arg("theta_grid"), py::arg("floor") = 32, py::arg("quadric") = 8,
          py::arg("seed") = 0);
}
