#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "checks.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path scratch =
        argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "phasetrop_acceptance";

    struct Criterion {
        const char* name;
        double budget_s;
        std::function<checks::Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"oracle equivalence, 500 random matrices, dist < 5e-2", 60.0, [] { return checks::oracle_equivalence(500); }},
        {"algebraic identities, 1000 cases", 0.0, [] { return checks::algebraic_identities(1000); }},
        {"line example trichotomy and gap", 5.0, [] { return checks::line_example(); }},
        {"quadric example, 3 witnesses + 200 families", 10.0, [] { return checks::quadric_example(200); }},
        {"constant family, 100 forward + 50 reverse per f", 30.0, [] { return checks::constant_family_two_sided(100, 50); }},
        {"kernel property suites", 30.0, [] { return checks::kernel_properties(); }},
        {"CLI determinism", 0.0, [&scratch] { return checks::cli_determinism(scratch); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        checks::Outcome o = c.run();
        const bool in_time = c.budget_s == 0.0 || o.seconds < c.budget_s;
        const bool ok = o.pass && in_time;
        if (!ok) ++failed;
        std::printf("[%s] %zu. %s (%.2fs%s) -- %s\n", ok ? "PASS" : "FAIL", i + 1, c.name, o.seconds,
                    in_time ? "" : ", over budget", o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
