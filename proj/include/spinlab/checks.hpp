#pragma once

#include "spinlab/cauchy.hpp"
#include "spinlab/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinlab {

// One verification with its measured value. kind is "<=", ">=", "==" or "info" (always passes).
struct CheckRow {
    std::string name;
    std::string anchor;
    std::string kind = "<=";
    double value = 0;
    double threshold = 0;
    bool pass = false;
    std::string result;
    std::string expected;
    std::map<std::string, double> metrics;
};

CheckRow check_le(std::string name, std::string anchor, double value, double threshold);
CheckRow check_ge(std::string name, std::string anchor, double value, double threshold);
CheckRow check_eq(std::string name, std::string anchor, long got, long expected);
bool all_pass(const std::vector<CheckRow>& rows);

// closed form = c * numeric, frozen per family; none for PUREODD (no single constant exists with z-dependent data).
std::optional<double> ricci_calibration(const FamilyTag& tag);

// Octonion and Clifford identities on seeded samples.
std::vector<CheckRow> algebra_checks(std::uint64_t seed, int samples = 1000, double tol = 1e-12);
// 45 rows, p + q <= 8.
std::vector<CheckRow> clifford_table_checks();
// Orbit and stabilizer integers.
std::vector<CheckRow> orbit_dimension_checks(std::uint64_t seed);
// sigma(z).sigma(z) = -4 P(z) and equivariance of every squaring map.
std::vector<CheckRow> squaring_checks(std::uint64_t seed, int samples = 200, double tol = 1e-9, double equiv_tol = 1e-8);
std::vector<CheckRow> triality_checks(std::uint64_t seed, int triples = 50, double tol = 1e-9);

// Pooled fit of one constant per family over draws x points, then the worst relative error.
std::vector<CheckRow> ricci_compare_checks(const std::vector<FamilyTag>& tags, std::uint64_t seed, int draws = 3,
                                           int points = 5, double tol = 1e-7);
// Same on a supplied metric.
std::vector<CheckRow> ricci_compare_metric(const CoordinateMetric& m, const std::vector<Vec>& points, double tol = 1e-7);
// Harmonic draws are Ricci-flat, witnesses are not.
std::vector<CheckRow> ricci_flat_checks(std::uint64_t seed, double flat_tol = 1e-8, double witness_min = 0.1);
// Constraint, Gram, connection and curvature summary of one metric.
std::vector<CheckRow> metric_checks(const CoordinateMetric& m, const std::vector<Vec>& points, double tol = 1e-9);
std::vector<CheckRow> holonomy_checks(std::uint64_t seed);
std::vector<CheckRow> holonomy_metric(const CoordinateMetric& m, const std::vector<Vec>& points,
                                      std::optional<int> expected, const std::string& label = {});
// Flat fiber with generic g on the (10,1) assembly.
std::vector<CheckRow> assembly_101_checks(std::uint64_t seed, double tol = 1e-9);
std::vector<CheckRow> curvature_space_checks();

// Seeded constraint-satisfying data for the odd problem.
CauchyData sample_cauchy_data(int p, int order, std::uint64_t seed);
std::vector<CheckRow> cauchy_checks(const CauchyData& data, const CauchySolution& s);
// Propagation run plus the violating datum.
std::vector<CheckRow> cauchy_propagation_checks(int p, int order, std::uint64_t seed);

}  // namespace spinlab
