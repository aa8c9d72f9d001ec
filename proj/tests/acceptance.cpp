// One line per acceptance criterion; exit status is the number of failed criteria.
#include "spinlab/checks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace spinlab;

namespace {

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<std::vector<CheckRow>()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckRow> rows;
    std::string error;
    try {
        rows = run();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int passed = 0;
    std::string bad;
    for (const auto& r : rows) {
        if (r.pass) {
            ++passed;
            continue;
        }
        bad += (bad.empty() ? "" : "; ") + r.name + " = " + r.result + " (want " + r.expected + ")";
    }
    const bool ok = error.empty() && bad.empty() && !rows.empty() && (limit <= 0 || secs < limit);
    if (!ok) ++failures;
    std::string why = !error.empty() ? "error: " + error : bad;
    if (limit > 0 && secs >= limit) why += (why.empty() ? "" : "; ") + std::string("over the time limit");
    const std::string lim = limit > 0 ? " (limit " + std::to_string(static_cast<int>(limit)) + " s)" : "";
    std::printf("criterion %2d %s  %-34s %d/%zu checks  %.2f s%s%s%s\n", id, ok ? "PASS" : "FAIL", title, passed, rows.size(),
                secs, lim.c_str(), why.empty() ? "" : "  ", why.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    constexpr std::uint64_t seed = 20240601;
    criterion(1, "Clifford classification", 60, [] { return clifford_table_checks(); });
    criterion(2, "algebraic identity suite", 30, [] { return algebra_checks(seed, 1000, 1e-12); });
    criterion(3, "orbit and stabilizer dimensions", 120, [] { return orbit_dimension_checks(seed); });
    criterion(4, "squaring map identities", 0, [] { return squaring_checks(seed, 200, 1e-9, 1e-8); });
    criterion(5, "triality", 0, [] { return triality_checks(seed, 50, 1e-9); });
    criterion(6, "Ricci oracle equivalence", 60, [] {
        return ricci_compare_checks({{Family::M22DEG, 0},
                                     {Family::PUREODD, 1},
                                     {Family::PUREODD, 2},
                                     {Family::PUREODD, 3},
                                     {Family::PUREEVEN, 1},
                                     {Family::PUREEVEN, 2},
                                     {Family::PUREEVEN, 3}},
                                    seed, 3, 5, 1e-7);
    });
    criterion(7, "Ricci-flat iff conditions", 0, [] { return ricci_flat_checks(seed, 1e-8, 0.1); });
    criterion(8, "holonomy spans", 120, [] { return holonomy_checks(seed); });
    criterion(9, "curvature space", 120, [] { return curvature_space_checks(); });
    criterion(10, "Cauchy propagation", 60, [] { return cauchy_propagation_checks(2, 6, seed); });
    criterion(11, "(10,1) assembly", 0, [] { return assembly_101_checks(seed, 1e-9); });
    std::printf("%d of 11 criteria failed\n", failures);
    return failures;
}
