#pragma once

#include "spinlab/cauchy.hpp"
#include "spinlab/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace spinlab::cli {

using json = nlohmann::json;

struct MalformedSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json(const std::string& path);

// Polynomial as [[exponent, coefficient], ...]; coefficient is an integer or a "p/q" string.
Poly poly_from_json(const json& j, int arity, const std::string& where);
json poly_to_json(const Poly& p);

struct MetricSpec {
    FamilyTag tag;
    CoordinateMetric metric;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    int points = 5;
    std::optional<int> expected_holonomy;
};

// {"family": "M21", "functions": [poly, ...]} or, for M101, {"family": "M101", "g": poly in (x2, x3),
// "fiber": "identity" | {"exponential": 8x8 rows}}.
MetricSpec parse_metric_spec(const json& j);

struct CauchySpec {
    CauchyData data;
    bool allow_constraint_violation = false;
    std::optional<std::uint64_t> seed;
};

// {"p": 2, "order": 6, "odd": true, "a": [poly, ...], "b": [poly, ...]}.
CauchySpec parse_cauchy_spec(const json& j);

struct AlgebraSpec {
    std::vector<Mat> matrices;
    std::optional<int> expected;
};

// {"matrices": [[[row], ...], ...], "expected": 20}.
AlgebraSpec parse_algebra_spec(const json& j);

}  // namespace spinlab::cli
