#include "commands.hpp"

#include "spec_io.hpp"
#include "spinlab/algebra.hpp"
#include "spinlab/checks.hpp"
#include "spinlab/version.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

namespace spinlab::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Outcome {
    std::vector<CheckRow> rows;
    json extra = json::object();
};

json row_json(const CheckRow& r) {
    return {{"name", r.name},     {"anchor", r.anchor},   {"kind", r.kind},     {"value", r.value},
            {"threshold", r.threshold}, {"pass", r.pass}, {"result", r.result}, {"expected", r.expected},
            {"metrics", r.metrics}};
}

std::vector<FamilyTag> closed_form_families() {
    return {{Family::M31, 0},     {Family::M22GEN, 0},  {Family::M22DEG, 0},  {Family::M41DEG, 0},
            {Family::M51NULL, 0}, {Family::M33NULL, 0}, {Family::PUREODD, 1}, {Family::PUREODD, 2},
            {Family::PUREODD, 3}, {Family::PUREEVEN, 1}, {Family::PUREEVEN, 2}, {Family::PUREEVEN, 3}};
}

std::vector<Vec> points_for(const MetricSpec& ms, std::uint64_t seed) {
    Rng rng(seed);
    return probe_points(ms.metric, rng, ms.points);
}

json solution_json(const CauchySolution& s) {
    json f = json::array();
    for (const Poly& q : solution_polynomials(s)) f.push_back(poly_to_json(q));
    json vars = json::array();
    if (s.odd) vars.push_back("z");
    for (int i = 1; i <= s.p; ++i) vars.push_back("x" + std::to_string(i));
    for (int i = 1; i <= s.p; ++i) vars.push_back("y" + std::to_string(i));
    json out = {{"variables", vars}, {"f", f}, {"order", s.order}, {"odd", s.odd}};
    if (!s.odd) {
        json c = json::array();
        for (const Poly& q : s.corrections) c.push_back(poly_to_json(q));
        out["face_corrections"] = c;
    }
    return out;
}

Outcome dispatch(const RunSpec& rs, std::uint64_t& seed, std::optional<double>& tol) {
    const std::string& c = rs.command;
    std::optional<json> spec;
    if (rs.spec_path) spec = load_json(*rs.spec_path);
    auto seed_from = [&](std::optional<std::uint64_t> s) { seed = rs.seed.value_or(s.value_or(kDefaultSeed)); };
    auto tol_from = [&](std::optional<double> t) {
        if (!tol && t) tol = t;
    };
    seed_from(std::nullopt);

    if (c == "algebra-selfcheck") return {algebra_checks(seed, 1000, tol.value_or(1e-12))};
    if (c == "clifford-table") return {clifford_table_checks()};
    if (c == "triality-check") return {triality_checks(seed, 50, tol.value_or(1e-9))};
    if (c == "orbit-report") {
        auto rows = orbit_dimension_checks(seed);
        for (auto& r : squaring_checks(seed, 200, tol.value_or(1e-9), 1e-8)) rows.push_back(r);
        return {rows};
    }
    if (c == "curvature-space") {
        if (!spec) return {curvature_space_checks()};
        AlgebraSpec as = parse_algebra_spec(*spec);
        auto cs = curvature_space(as.matrices);
        CheckRow r = as.expected ? check_eq("curvature_space.dimension", "curvature space", cs.dimension, *as.expected)
                                 : check_le("curvature_space.dimension", "curvature space", 0, 0);
        if (!as.expected) {
            r.kind = "info";
            r.value = cs.dimension;
            r.result = std::to_string(cs.dimension);
            r.expected.clear();
        }
        r.metrics = {{"algebra_dimension", cs.algebra_dim}, {"float_rank", cs.float_rank}, {"modular_rank", cs.modular_rank}};
        return {{r}};
    }
    if (c == "metric-verify" || c == "ricci-compare" || c == "holonomy-estimate") {
        if (!spec) {
            if (c == "metric-verify") {
                auto rows = ricci_flat_checks(seed);
                for (auto& r : assembly_101_checks(seed, tol.value_or(1e-9))) rows.push_back(r);
                return {rows};
            }
            if (c == "ricci-compare") return {ricci_compare_checks(closed_form_families(), seed, 3, 5, tol.value_or(1e-7))};
            return {holonomy_checks(seed)};
        }
        MetricSpec ms = parse_metric_spec(*spec);
        seed_from(ms.seed);
        tol_from(ms.tolerance);
        const auto pts = points_for(ms, seed);
        Outcome o;
        if (c == "metric-verify") {
            o.rows = metric_checks(ms.metric, pts, tol.value_or(1e-9));
        } else if (c == "ricci-compare") {
            if (!has_closed_form_ricci(ms.tag)) throw MalformedSpec("spec: no closed-form Ricci for " + family_name(ms.tag));
            o.rows = ricci_compare_metric(ms.metric, pts, tol.value_or(1e-7));
        } else {
            o.rows = holonomy_metric(ms.metric, pts, ms.expected_holonomy);
        }
        o.extra["family"] = family_name(ms.tag);
        return o;
    }
    if (c == "cauchy-solve") {
        Outcome o;
        if (!spec) {
            const int p = rs.p.value_or(2), order = rs.order.value_or(6);
            if (p < 1 || p > 4) throw MalformedSpec("--p must be between 1 and 4");
            if (order < 2) throw MalformedSpec("--order must be at least 2");
            o.rows = cauchy_propagation_checks(p, order, seed);
            o.extra["solution"] = solution_json(solve_ricci_ivp(sample_cauchy_data(p, order, seed)));
            o.extra["parameters"] = {{"p", p}, {"order", order}};
            return o;
        }
        CauchySpec cs = parse_cauchy_spec(*spec);
        seed_from(cs.seed);
        if (rs.p && *rs.p != cs.data.p) throw MalformedSpec("--p disagrees with the spec file");
        if (rs.order) cs.data.order = *rs.order;
        CauchySolution s;
        try {
            s = solve_ricci_ivp(cs.data, {cs.allow_constraint_violation});
        } catch (const CauchyError& e) {
            throw MalformedSpec(std::string("spec: ") + e.what());
        }
        o.rows = cauchy_checks(cs.data, s);
        o.extra["solution"] = solution_json(s);
        o.extra["parameters"] = {{"p", cs.data.p}, {"order", cs.data.order}};
        return o;
    }
    throw MalformedSpec("unknown command " + c);
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"algebra-selfcheck", "clifford-table",    "orbit-report",
                                                   "triality-check",    "metric-verify",     "ricci-compare",
                                                   "holonomy-estimate", "cauchy-solve",      "curvature-space"};
    return names;
}

int run_command(const RunSpec& rs) {
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> tol = rs.tol;
    Outcome o;
    try {
        o = dispatch(rs, seed, tol);
    } catch (const MalformedSpec& e) {
        std::cerr << "spinlab: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "spinlab: " << rs.command << " failed: " << e.what() << "\n";
        return 1;
    }
    std::stable_sort(o.rows.begin(), o.rows.end(), [](const CheckRow& a, const CheckRow& b) { return a.name < b.name; });
    json checks = json::array();
    for (const auto& r : o.rows) checks.push_back(row_json(r));
    const bool pass = all_pass(o.rows);
    json report = {{"command", rs.command},
                   {"version", kVersion},
                   {"octonion_checksum", octonion_table_checksum()},
                   {"seed", seed},
                   {"tolerance", tol ? json(*tol) : json(nullptr)},
                   {"spec", rs.spec_path ? json(*rs.spec_path) : json(nullptr)},
                   {"pass", pass},
                   {"checks", checks}};
    for (auto& [k, v] : o.extra.items()) report[k] = v;
    const std::string text = report.dump(2) + "\n";
    if (rs.out) {
        std::ofstream f(*rs.out, std::ios::binary);
        if (!f) {
            std::cerr << "spinlab: cannot write " << *rs.out << "\n";
            return 2;
        }
        f << text;
    } else {
        std::cout << text;
    }
    for (const auto& r : o.rows)
        if (!r.pass)
            std::cerr << "FAIL " << r.name << ": " << r.result << " (expected " << r.expected << ") [" << r.anchor << "]\n";
    return pass ? 0 : 1;
}

}  // namespace spinlab::cli
