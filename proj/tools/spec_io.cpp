#include "spec_io.hpp"

#include <fstream>

namespace spinlab::cli {

namespace {

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw MalformedSpec(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw MalformedSpec(where + ": bad \"" + key + "\": " + e.what());
    }
}

template <class T>
std::optional<T> maybe(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get<T>(j, key, where);
}

Mat matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw MalformedSpec(where + ": expected a list of rows");
    const auto rows = static_cast<int>(j.size()), cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[static_cast<size_t>(r)].is_array() || static_cast<int>(j[static_cast<size_t>(r)].size()) != cols)
            throw MalformedSpec(where + ": ragged matrix");
        for (int c = 0; c < cols; ++c) {
            const json& v = j[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (!v.is_number()) throw MalformedSpec(where + ": matrix entries must be numbers");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

std::vector<Poly> poly_list(const json& j, const char* key, int arity, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_array()) throw MalformedSpec(where + ": \"" + key + "\" must be a list");
    std::vector<Poly> out;
    for (size_t i = 0; i < j.at(key).size(); ++i)
        out.push_back(poly_from_json(j.at(key)[i], arity, where + "." + key + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedSpec("cannot open spec file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedSpec(path + ": " + e.what());
    }
}

Poly poly_from_json(const json& j, int arity, const std::string& where) {
    if (!j.is_array()) throw MalformedSpec(where + ": polynomial must be a list of [exponent, coefficient]");
    Poly p(arity);
    for (const json& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            throw MalformedSpec(where + ": term must be [exponent, coefficient]");
        Exponent e;
        for (const json& k : t[0]) {
            if (!k.is_number_integer() || k.get<int>() < 0) throw MalformedSpec(where + ": exponents must be nonnegative integers");
            e.push_back(k.get<int>());
        }
        if (static_cast<int>(e.size()) != arity)
            throw MalformedSpec(where + ": exponent has " + std::to_string(e.size()) + " entries, expected " +
                                std::to_string(arity));
        mpq_class c;
        if (t[1].is_number_integer()) {
            c = mpq_class(t[1].get<long>());
        } else if (t[1].is_string()) {
            try {
                c = mpq_class(t[1].get<std::string>());
                c.canonicalize();
            } catch (const std::invalid_argument&) {
                throw MalformedSpec(where + ": bad rational \"" + t[1].get<std::string>() + "\"");
            }
            if (c.get_den() == 0) throw MalformedSpec(where + ": zero denominator");
        } else {
            throw MalformedSpec(where + ": coefficient must be an integer or a \"p/q\" string");
        }
        p.add_term(e, c);
    }
    return p;
}

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms()) out.push_back(json::array({e, c.get_str()}));
    return out;
}

MetricSpec parse_metric_spec(const json& j) {
    if (!j.is_object()) throw MalformedSpec("spec must be a JSON object");
    MetricSpec s;
    const auto name = get<std::string>(j, "family", "spec");
    try {
        s.tag = name == "M101" ? FamilyTag{Family::M101, 0} : parse_family(name);
    } catch (const std::exception& e) {
        throw MalformedSpec("spec: " + std::string(e.what()));
    }
    s.seed = maybe<std::uint64_t>(j, "seed", "spec");
    s.tolerance = maybe<double>(j, "tolerance", "spec");
    s.points = maybe<int>(j, "points", "spec").value_or(5);
    if (s.points < 1) throw MalformedSpec("spec: points must be positive");
    s.expected_holonomy = maybe<int>(j, "expected_holonomy", "spec");
    try {
        if (s.tag.family == Family::M101) {
            Poly g = poly_from_json(j.contains("g") ? j.at("g") : json::array(), 2, "spec.g");
            FiberFamily fiber = FiberFamily::identity();
            if (j.contains("fiber") && !(j.at("fiber").is_string() && j.at("fiber") == "identity")) {
                if (!j.at("fiber").is_object() || !j.at("fiber").contains("exponential"))
                    throw MalformedSpec("spec.fiber: expected \"identity\" or {\"exponential\": matrix}");
                fiber = FiberFamily::exponential(matrix_from_json(j.at("fiber").at("exponential"), "spec.fiber"), "exp");
            }
            s.metric = build_metric_10_1(fiber, FreeFunction::polynomial(g));
        } else {
            auto [count, arity] = family_arity(s.tag);
            auto polys = poly_list(j, "functions", arity, "spec");
            if (static_cast<int>(polys.size()) != count)
                throw MalformedSpec("spec: " + family_name(s.tag) + " takes " + std::to_string(count) + " functions, got " +
                                    std::to_string(polys.size()));
            std::vector<FreeFunction> fns;
            for (const Poly& p : polys) fns.push_back(FreeFunction::polynomial(p));
            s.metric = build_metric(s.tag, fns);
        }
    } catch (const MalformedSpec&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw MalformedSpec("spec: " + std::string(e.what()));
    }
    return s;
}

CauchySpec parse_cauchy_spec(const json& j) {
    if (!j.is_object()) throw MalformedSpec("spec must be a JSON object");
    CauchySpec s;
    s.data.p = get<int>(j, "p", "spec");
    s.data.order = maybe<int>(j, "order", "spec").value_or(6);
    s.data.odd = maybe<bool>(j, "odd", "spec").value_or(true);
    s.allow_constraint_violation = maybe<bool>(j, "allow_constraint_violation", "spec").value_or(false);
    s.seed = maybe<std::uint64_t>(j, "seed", "spec");
    if (s.data.p < 1 || s.data.p > 4) throw MalformedSpec("spec: p must be between 1 and 4");
    s.data.a = poly_list(j, "a", 2 * s.data.p, "spec");
    s.data.b = poly_list(j, "b", 2 * s.data.p, "spec");
    return s;
}

AlgebraSpec parse_algebra_spec(const json& j) {
    if (!j.is_object()) throw MalformedSpec("spec must be a JSON object");
    AlgebraSpec s;
    if (!j.contains("matrices") || !j.at("matrices").is_array() || j.at("matrices").empty())
        throw MalformedSpec("spec: \"matrices\" must be a nonempty list");
    for (size_t i = 0; i < j.at("matrices").size(); ++i) {
        Mat m = matrix_from_json(j.at("matrices")[i], "spec.matrices[" + std::to_string(i) + "]");
        if (m.rows() != m.cols() || (!s.matrices.empty() && m.rows() != s.matrices[0].rows()))
            throw MalformedSpec("spec: matrices must be square and of one size");
        s.matrices.push_back(m);
    }
    s.expected = maybe<int>(j, "expected", "spec");
    return s;
}

}  // namespace spinlab::cli
