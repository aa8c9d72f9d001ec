#include "spinlab/checks.hpp"

#include "spinlab/clifford.hpp"
#include "spinlab/octo_spin.hpp"
#include "spinlab/orbits.hpp"
#include "spinlab/samples.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace spinlab {

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double max_coefficient(const JetSeries& j) {
    double r = 0;
    const auto& set = *j.set();
    for (int i = 0; i < set.upto[static_cast<size_t>(j.order())]; ++i)
        r = std::max(r, std::abs(j[i].get_d()));
    return r;
}

CheckRow info(std::string name, std::string anchor, double value, std::string result = {}) {
    CheckRow r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.kind = "info";
    r.value = value;
    r.pass = true;
    r.result = result.empty() ? num(value) : std::move(result);
    return r;
}

std::vector<Mat> so_n(int n) {
    std::vector<Mat> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat a = Mat::Zero(n, n);
            a(i, j) = 1;
            a(j, i) = -1;
            out.push_back(a);
        }
    return out;
}

double triple_diff(const TrialityTriple& a, const TrialityTriple& b) {
    return std::max({max_abs(a.g1 - b.g1), max_abs(a.g2 - b.g2), max_abs(a.g3 - b.g3)});
}

FreeFunction generic_g() {
    Poly p(2);
    p.add_term({2, 1}, 1);
    p.add_term({1, 2}, 2);
    p.add_term({3, 0}, 1);
    p.add_term({0, 1}, 1);
    return FreeFunction::polynomial(p);
}

struct RicciPool {
    std::vector<Mat> closed, numeric;
    void add(const CoordinateMetric& m, const Vec& x) {
        closed.push_back(ricci_closed_form(m, x));
        numeric.push_back(ricci_numeric(m, x));
    }
};

CheckRow ricci_row(const std::string& name, const RicciPool& pool, std::optional<double> frozen, double tol) {
    double pn = 0, nn = 0, mn = 0, mp = 0;
    for (size_t i = 0; i < pool.closed.size(); ++i) {
        pn += (pool.closed[i].array() * pool.numeric[i].array()).sum();
        nn += pool.numeric[i].squaredNorm();
        mn = std::max(mn, max_abs(pool.numeric[i]));
        mp = std::max(mp, max_abs(pool.closed[i]));
    }
    if (mn <= 1e-12 && mp <= 1e-12) {
        CheckRow r = check_le(name, "closed-form Ricci vs jet Ricci", 0.0, tol);
        r.result = "both vanish";
        r.metrics = {{"max_numeric", mn}, {"max_closed_form", mp}, {"samples", double(pool.closed.size())}};
        return r;
    }
    const double c = nn > 0 ? pn / nn : 0.0;
    double scale = 0, err = 0;
    for (size_t i = 0; i < pool.closed.size(); ++i) {
        scale = std::max({scale, max_abs(pool.closed[i]), std::abs(c) * max_abs(pool.numeric[i])});
        err = std::max(err, max_abs(pool.closed[i] - c * pool.numeric[i]));
    }
    CheckRow r = check_le(name, "closed-form Ricci vs jet Ricci", scale > 0 ? err / scale : err, tol);
    r.metrics = {{"constant", c}, {"max_numeric", mn}, {"max_closed_form", mp}, {"samples", double(pool.closed.size())}};
    if (frozen) r.metrics["frozen_constant"] = *frozen;
    r.result = "c = " + num(c) + ", relative error " + num(r.value);
    return r;
}

}  // namespace

CheckRow check_le(std::string name, std::string anchor, double value, double threshold) {
    CheckRow r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.kind = "<=";
    r.value = value;
    r.threshold = threshold;
    r.pass = value <= threshold;
    r.result = num(value);
    r.expected = "<= " + num(threshold);
    return r;
}

CheckRow check_ge(std::string name, std::string anchor, double value, double threshold) {
    CheckRow r = check_le(std::move(name), std::move(anchor), value, threshold);
    r.kind = ">=";
    r.pass = value >= threshold;
    r.expected = ">= " + num(threshold);
    return r;
}

CheckRow check_eq(std::string name, std::string anchor, long got, long expected) {
    CheckRow r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.kind = "==";
    r.value = static_cast<double>(got);
    r.threshold = static_cast<double>(expected);
    r.pass = got == expected;
    r.result = std::to_string(got);
    r.expected = std::to_string(expected);
    return r;
}

bool all_pass(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::optional<double> ricci_calibration(const FamilyTag& tag) {
    switch (tag.family) {
        case Family::M31:
        case Family::M51NULL: return 2.0;
        case Family::M22GEN: return 0.5;
        case Family::M22DEG:
        case Family::M41DEG:
        case Family::M33NULL:
        case Family::PUREEVEN: return 1.0;
        default: return std::nullopt;
    }
}

std::vector<CheckRow> algebra_checks(std::uint64_t seed, int samples, double tol) {
    Rng rng(seed);
    double m1 = 0, m2 = 0, m3 = 0, norm = 0, conj = 0, mx = 0;
    for (int t = 0; t < samples; ++t) {
        Octonion x = random_octonion(rng), y = random_octonion(rng), z = random_octonion(rng);
        const double s = x.norm() * y.norm() * z.norm2();
        m1 = std::max(m1, (z * (x * (z * y)) - ((z * x) * z) * y).norm() / s);
        m2 = std::max(m2, (x * (z * (y * z)) - ((x * z) * y) * z).norm() / s);
        m3 = std::max(m3, ((z * x) * (y * z) - (z * (x * y)) * z).norm() / s);
        norm = std::max(norm, std::abs((x * y).norm2() - x.norm2() * y.norm2()) / (x.norm2() * y.norm2()));
        conj = std::max(conj, ((x * y).conj() - y.conj() * x.conj()).norm() / (x.norm() * y.norm()));
        Mat m = clifford_map_mx(x);
        mx = std::max(mx, max_abs(m * m + x.norm2() * Mat::Identity(16, 16)) / x.norm2());
    }
    std::vector<CliffordModel> models;
    double rel = 0;
    for (int n = 0; n <= 8; ++n)
        for (int p = n; p >= 0; --p) {
            models.push_back(build_algebra(p, n - p));
            rel = std::max(rel, models.back().relation_residual());
        }
    double vv = 0;
    for (int t = 0; t < samples; ++t) {
        const CliffordModel& m = models[static_cast<size_t>(1 + t % (static_cast<int>(models.size()) - 1))];
        Vec v = rng.normal_vec(m.n());
        Mat a = m.vector(v);
        vv = std::max(vv, max_abs(a * a + m.form(v, v) * m.identity()) / std::max(1.0, v.squaredNorm()));
    }
    const std::string oct = "octonion identities";
    const std::string cl = "Clifford relations vw + wv = -2 v.w";
    std::vector<CheckRow> rows = {
        check_le("octonion.moufang_1", oct, m1, tol),
        check_le("octonion.moufang_2", oct, m2, tol),
        check_le("octonion.moufang_3", oct, m3, tol),
        check_le("octonion.norm_multiplicative", oct, norm, tol),
        check_le("octonion.conjugation_reverses", oct, conj, tol),
        check_le("clifford.generator_relations", cl, rel, tol),
        check_le("clifford.vector_squares", cl, vv, tol),
        check_le("octonion.clifford_map_square", "m_x squared is -|x|^2", mx, tol),
    };
    for (auto& r : rows) r.metrics["samples"] = samples;
    return rows;
}

std::vector<CheckRow> clifford_table_checks() {
    std::vector<CheckRow> rows;
    for (int n = 0; n <= 8; ++n)
        for (int p = n; p >= 0; --p) {
            const int q = n - p;
            const CliffordClass got = classify_model(build_algebra(p, q));
            const CliffordClass want = clifford_table(p, q);
            CheckRow r;
            r.name = "clifford.Cl(" + std::to_string(p) + "," + std::to_string(q) + ")";
            r.anchor = "Clifford algebra classification table";
            r.kind = "==";
            r.pass = got == want;
            r.value = r.pass ? 1 : 0;
            r.threshold = 1;
            r.result = got.str();
            r.expected = want.str();
            rows.push_back(r);
        }
    return rows;
}

std::vector<CheckRow> orbit_dimension_checks(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckRow> rows;
    {
        SpinOrbitModel m = make_model("SPIN41");
        Vec s = Vec::Zero(8);
        s(0) = 1;
        s(4) = 1;
        rows.push_back(check_eq("orbit.spin41_null_stabilizer", "null spinor stabilizer in Spin(4,1), R^3",
                                stabilizer_dimension(m, s), 3));
    }
    {
        SpinOrbitModel m = make_model("SPIN51");
        Vec s = Vec::Zero(16);
        s(4) = 1;
        s(8) = 1;
        rows.push_back(check_eq("orbit.spin51_null_orbit", "null-type orbit in Spin(5,1)", orbit_dimension(m, s), 11));
        rows.push_back(check_eq("orbit.spin51_null_stabilizer", "null-type orbit in Spin(5,1)",
                                stabilizer_dimension(m, s), 4));
    }
    {
        SpinOrbitModel m = make_model("SPIN32");
        rows.push_back(
            check_eq("orbit.spin32_orbit", "Spin(3,2) orbit, q(q+1)/2 + 1", orbit_dimension(m, sample_spinor(m, rng)), 4));
    }
    {
        SpinOrbitModel m = clifford_orbit_model(4, 3);
        Eigen::SelfAdjointEigenSolver<Mat> es(m.spinor_form);
        const int last = m.spinor_dim - 1;
        Vec s = std::sqrt(es.eigenvalues()(last)) * es.eigenvectors().col(0) +
                std::sqrt(-es.eigenvalues()(0)) * es.eigenvectors().col(last);
        CheckRow r = check_eq("orbit.spin43_pure_orbit", "pure spinors in (4,3) form a hypersurface", orbit_dimension(m, s), 7);
        r.metrics["pure"] = is_pure(m, s) ? 1 : 0;
        if (!is_pure(m, s)) r.pass = false;
        rows.push_back(r);
    }
    rows.push_back(check_eq("orbit.spin101_null_stabilizer", "Spin(10,1) null stabilizer, 55 - 25", null_stabilizer_dim(), 30));
    Vec z = rng.normal_vec(32);
    while (p_invariant(z) <= 0.1) z = rng.normal_vec(32);
    rows.push_back(
        check_eq("orbit.spin101_timelike_stabilizer", "Spin(10,1) timelike stabilizer, SU(5)", stabilizer_dim_101(z), 24));
    return rows;
}

std::vector<CheckRow> squaring_checks(std::uint64_t seed, int samples, double tol, double equiv_tol) {
    Rng rng(seed);
    std::vector<CheckRow> rows;
    double quartic = 0;
    for (int t = 0; t < samples; ++t) {
        Vec z = rng.normal_vec(32);
        Vec s = sigma_10_1(z);
        quartic = std::max(quartic, std::abs(inner101(s, s) + 4 * p_invariant(z)) / std::pow(z.squaredNorm(), 2));
    }
    rows.push_back(check_le("squaring.spin101_quartic", "sigma(z).sigma(z) = -4 P(z)", quartic, tol));

    std::vector<SpinOrbitModel> models;
    for (const auto& name : model_names()) models.push_back(make_model(name));
    models.push_back(clifford_orbit_model(4, 3));
    models.push_back(clifford_orbit_model(4, 4));
    for (const auto& m : models) {
        if (!m.has_square()) continue;
        double worst = 0;
        for (int t = 0; t < samples; ++t) {
            GroupElement g = sample_group(m, rng);
            Vec s = sample_spinor(m, rng);
            if (m.name == "SPIN51") s.tail(8).setZero();
            Vec lhs = square_spinor(m, act_spinor(m, g, s));
            Vec rhs = act_vector(m, g, square_spinor(m, s));
            worst = std::max(worst, (lhs - rhs).norm() / (g.spinor.squaredNorm() * std::max(1.0, s.squaredNorm())));
        }
        rows.push_back(check_le("squaring.equivariance." + m.name, "squaring map is equivariant", worst, equiv_tol));
    }
    double worst = 0;
    for (int t = 0; t < samples; ++t) {
        Spin101Element e = spin101_element(random_spin101(rng, 0.3));
        Vec z = rng.normal_vec(32);
        Vec rhs = expm(rho_prime(e)) * sigma_10_1(z);
        worst = std::max(worst, (sigma_10_1(expm(e.matrix) * z) - rhs).norm() / std::max(1.0, rhs.norm()));
    }
    rows.push_back(check_le("squaring.equivariance.SPIN101", "squaring map is equivariant", worst, equiv_tol));
    for (auto& r : rows) r.metrics["samples"] = samples;
    return rows;
}

std::vector<CheckRow> triality_checks(std::uint64_t seed, int triples, double tol) {
    Rng rng(seed);
    double gen = 0, a2 = 0, b2 = 0, t3 = 0, images = 0;
    for (int t = 0; t < triples; ++t) {
        TrialityTriple g = random_triple(rng);
        gen = std::max(gen, triple_residual(g));
        for (auto w : {TrialityMap::Alpha, TrialityMap::Beta, TrialityMap::Tau})
            images = std::max(images, triple_residual(triality_apply(g, w)));
        a2 = std::max(a2, triple_diff(triality_apply(triality_apply(g, TrialityMap::Alpha), TrialityMap::Alpha), g));
        b2 = std::max(b2, triple_diff(triality_apply(triality_apply(g, TrialityMap::Beta), TrialityMap::Beta), g));
        TrialityTriple c = g;
        for (int k = 0; k < 3; ++k) c = triality_apply(c, TrialityMap::Tau);
        t3 = std::max(t3, triple_diff(c, g));
    }
    const std::string a = "triality automorphisms of Spin(8)";
    std::vector<CheckRow> rows = {check_le("triality.triples_valid", a, gen, tol),
                                  check_le("triality.images_valid", a, images, tol),
                                  check_le("triality.alpha_squared", a, a2, tol),
                                  check_le("triality.beta_squared", a, b2, tol),
                                  check_le("triality.tau_cubed", a, t3, tol)};
    for (auto& r : rows) r.metrics["triples"] = triples;
    return rows;
}

std::vector<CheckRow> ricci_compare_checks(const std::vector<FamilyTag>& tags, std::uint64_t seed, int draws, int points,
                                           double tol) {
    Rng rng(seed);
    std::vector<CheckRow> rows;
    for (const auto& t : tags) {
        RicciPool pool;
        for (int d = 0; d < draws; ++d) {
            auto m = build_metric(t, sample_functions(t, rng));
            for (const Vec& x : probe_points(m, rng, points)) pool.add(m, x);
        }
        rows.push_back(ricci_row("ricci." + family_name(t), pool, ricci_calibration(t), tol));
        if (auto c = ricci_calibration(t); c && rows.back().metrics.count("constant"))
            rows.push_back(check_le("ricci." + family_name(t) + ".frozen_constant", "calibration constant",
                                    std::abs(rows.back().metrics["constant"] - *c), 1e-6));
    }
    return rows;
}

std::vector<CheckRow> ricci_compare_metric(const CoordinateMetric& m, const std::vector<Vec>& points, double tol) {
    RicciPool pool;
    for (const Vec& x : points) pool.add(m, x);
    std::vector<CheckRow> rows{ricci_row("ricci." + family_name(m.tag), pool, ricci_calibration(m.tag), tol)};
    if (auto c = ricci_calibration(m.tag)) {
        auto fixed = compare_ricci(m, points, *c);
        rows.push_back(check_le("ricci." + family_name(m.tag) + ".at_frozen_constant", "calibration constant",
                                fixed.max_relative_error, tol));
        rows.back().metrics["constant"] = *c;
    }
    return rows;
}

std::vector<CheckRow> ricci_flat_checks(std::uint64_t seed, double flat_tol, double witness_min) {
    Rng rng(seed);
    std::vector<CheckRow> rows;
    for (Family fam : {Family::M31, Family::M41DEG, Family::M51NULL, Family::M22GEN}) {
        FamilyTag t{fam, 0};
        double flat = 0, closed = 0;
        for (int d = 0; d < 3; ++d) {
            auto m = build_metric(t, harmonic_functions(t, rng));
            for (const Vec& x : probe_points(m, rng, 3)) {
                flat = std::max(flat, max_abs(ricci_numeric(m, x)));
                closed = std::max(closed, max_abs(ricci_closed_form(m, x)));
            }
        }
        CheckRow r = check_le("ricci_flat." + family_name(t) + ".harmonic", "Ricci-flat iff harmonic", flat, flat_tol);
        r.metrics["closed_form"] = closed;
        if (closed > flat_tol) r.pass = false;
        rows.push_back(r);
        auto w = build_metric(t, witness_functions(t));
        double least = -1;
        for (const Vec& x : probe_points(w, rng, 3)) {
            const double v = max_abs(ricci_numeric(w, x));
            least = least < 0 ? v : std::min(least, v);
        }
        rows.push_back(check_ge("ricci_flat." + family_name(t) + ".witness", "Ricci-flat iff harmonic", least, witness_min));
    }
    return rows;
}

std::vector<CheckRow> metric_checks(const CoordinateMetric& m, const std::vector<Vec>& points, double tol) {
    double cons = 0, gram = 0, conn = 0, skew = 0, riem = 0, ric = 0, forms = 0;
    auto cr = constraint_check(m, points);
    cons = cr.max();
    for (const Vec& x : points) {
        gram = std::max(gram, coframe_gram_residual(m, x));
        auto c = adapted_connection_check(m, x);
        conn = std::max(conn, c.residual);
        skew = std::max(skew, c.skew_residual);
        auto cd = curvature(m, x);
        for (double v : cd.riemann) riem = std::max(riem, std::abs(v));
        ric = std::max(ric, max_abs(cd.ricci));
        for (const auto& f : m.parallel_forms) forms = std::max(forms, covariant_derivative_norm(m, f, x));
    }
    const std::string a = "adapted coframe of " + family_name(m.tag);
    std::vector<CheckRow> rows = {check_le("metric.constraints", "constraints on the free functions", cons, tol),
                                  check_le("metric.coframe_gram", a, gram, tol),
                                  check_le("metric.connection_in_stabilizer", a, conn, tol),
                                  check_le("metric.connection_skew", a, skew, tol),
                                  info("metric.max_riemann", "curvature at the probes", riem),
                                  info("metric.max_ricci", "curvature at the probes", ric)};
    if (!m.parallel_forms.empty()) rows.push_back(check_le("metric.parallel_forms", "parallel forms", forms, tol));
    for (auto& r : rows) r.metrics["points"] = double(points.size());
    return rows;
}

std::vector<CheckRow> holonomy_metric(const CoordinateMetric& m, const std::vector<Vec>& points,
                                      std::optional<int> expected, const std::string& label) {
    auto h = holonomy_span(m, points);
    const std::string a = "holonomy of " + family_name(m.tag);
    std::vector<CheckRow> rows;
    const std::string base = "holonomy." + (label.empty() ? family_name(m.tag) : label);
    if (expected) {
        rows.push_back(check_eq(base + ".dimension", a, h.dimension, *expected));
    } else {
        rows.push_back(info(base + ".dimension", a, h.dimension, std::to_string(h.dimension)));
    }
    rows.back().metrics = {{"stabilizer_dimension", h.reference}, {"iterations", h.iterations}};
    rows.push_back(check_le(base + ".inside_stabilizer", a, h.outside, 1e-10));
    rows.push_back(check_le(base + ".at_most_stabilizer", a, h.dimension, h.reference));
    return rows;
}

std::vector<CheckRow> holonomy_checks(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckRow> rows;
    auto add = [&](const std::string& label, const CoordinateMetric& m, int expected) {
        for (const auto& r : holonomy_metric(m, probe_points(m, rng, 3), expected, label)) rows.push_back(r);
    };
    add("flat_M21", build_metric({Family::M21, 0}, {FreeFunction::zero(family_arity({Family::M21, 0}).second)}), 0);
    add("M22DEG_quartic", build_metric({Family::M22DEG, 0}, sample_functions({Family::M22DEG, 0}, rng)), 4);
    add("PUREODD(2)_quadratic", build_metric({Family::PUREODD, 2}, as_functions(quadratic_family(2, rng))), 6);
    add("PUREODD(3)_quadratic", build_metric({Family::PUREODD, 3}, as_functions(quadratic_family(3, rng))), 14);
    return rows;
}

std::vector<CheckRow> assembly_101_checks(std::uint64_t seed, double tol) {
    Rng rng(seed);
    auto m = build_metric_10_1(FiberFamily::identity(), generic_g());
    double conn = 0, ric = 0;
    std::map<std::string, double> forms;
    for (const Vec& x : probe_points(m, rng, 5)) {
        conn = std::max(conn, adapted_connection_check(m, x).residual);
        ric = std::max(ric, max_abs(ricci_numeric(m, x)));
        for (const auto& f : m.parallel_forms) forms[f.name] = std::max(forms[f.name], covariant_derivative_norm(m, f, x));
    }
    const std::string a = "(10,1) metric with flat fiber";
    std::vector<CheckRow> rows = {check_le("m101.connection_in_stabilizer", a, conn, tol),
                                  check_ge("m101.not_ricci_flat", "not, in general, Ricci-flat", ric, 1e-3)};
    for (const auto& [name, v] : forms) rows.push_back(check_le("m101.parallel." + name, "closed and parallel forms", v, tol));
    auto h = holonomy_span(m, probe_points(m, rng, 3));
    rows.push_back(info("m101.holonomy_dimension", a, h.dimension, std::to_string(h.dimension)));
    rows.back().metrics["stabilizer_dimension"] = h.reference;
    for (auto& r : rows) r.metrics["points"] = 5;
    return rows;
}

std::vector<CheckRow> curvature_space_checks() {
    std::vector<CheckRow> rows;
    auto big = curvature_space(rho_prime_stabilizer());
    CheckRow r = check_eq("curvature_space.spin101_null", "curvature space of the (10,1) null stabilizer", big.dimension, 325);
    r.metrics = {{"algebra_dimension", big.algebra_dim}, {"float_rank", big.float_rank}, {"modular_rank", big.modular_rank}};
    rows.push_back(r);
    rows.push_back(check_eq("curvature_space.spin101_null.modular_rank", "exact rank cross-check", big.modular_rank,
                            big.float_rank));
    rows.push_back(check_eq("curvature_space.so4", "curvature space of so(4)", curvature_space(so_n(4)).dimension, 20));
    rows.push_back(check_eq("curvature_space.so3", "curvature space of so(3)", curvature_space(so_n(3)).dimension, 6));
    return rows;
}

CauchyData sample_cauchy_data(int p, int order, std::uint64_t seed) {
    Rng rng(seed);
    CauchyData d;
    d.p = p;
    d.order = order;
    d.a = trace_free_functions({Family::PUREEVEN, p}, 3, rng);
    d.b = trace_free_functions({Family::PUREEVEN, p}, 2, rng);
    return d;
}

std::vector<CheckRow> cauchy_checks(const CauchyData& data, const CauchySolution& s) {
    const std::string tag = s.odd ? "cauchy" : "cauchy.even";
    const std::string a = s.odd ? "Ricci-flat initial value problem" : "even split initial value problem";
    std::vector<CheckRow> rows;
    double data_res = 0;
    for (const Poly& q : data_constraint_residuals(data))
        for (const auto& [e, c] : q.terms()) data_res = std::max(data_res, std::abs(c.get_d()));
    rows.push_back(info(tag + ".data_constraint", "constraint equations on the data", data_res));
    auto A = constraint_residual(s);
    for (size_t l = 0; l < A.size(); ++l) {
        CheckRow r = check_le(tag + ".A" + std::to_string(l + 1), "constraint propagation", max_coefficient(A[l]), 0.0);
        r.metrics = {{"order", s.order - 1}, {"lowest_degree", lowest_degree(A[l])}};
        rows.push_back(r);
    }
    auto rep = verify_ricci_flat(s);
    double worst = 0;
    for (const auto& r : rep.ricci) worst = std::max(worst, max_coefficient(r));
    CheckRow r = check_le(tag + ".ricci_series", a, worst, 0.0);
    r.metrics = {{"order", rep.order}, {"first_nonzero_degree", rep.first_nonzero_degree}};
    rows.push_back(r);
    return rows;
}

std::vector<CheckRow> cauchy_propagation_checks(int p, int order, std::uint64_t seed) {
    CauchyData d = sample_cauchy_data(p, order, seed);
    std::vector<CheckRow> rows = cauchy_checks(d, solve_ricci_ivp(d));

    CauchyData bad = d;
    bad.a[static_cast<size_t>(pair_index(p, 0, 0))] = bad.a[static_cast<size_t>(pair_index(p, 0, 0))] + Poly::variable(2 * p, p);
    bool rejected = false;
    try {
        solve_ricci_ivp(bad);
    } catch (const CauchyError&) {
        rejected = true;
    }
    rows.push_back(check_eq("cauchy.violation.rejected", "constraint equations on the data", rejected ? 1 : 0, 1));
    auto A = constraint_residual(solve_ricci_ivp(bad, {true}));
    rows.push_back(check_eq("cauchy.violation.A1_lowest_degree", "constraint propagation", lowest_degree(A[0]), 0));

    // Even split case on the faces of the same draw.
    CauchyData e;
    e.p = p;
    e.order = order;
    e.odd = false;
    for (size_t u = 0; u < d.a.size(); ++u) {
        Poly fa(2 * p), fb(2 * p);
        for (const auto& [ex, c] : d.a[u].terms()) {
            if (ex[0] == 0) fa.add_term(ex, c);
            if (ex[0] == 0 && ex[static_cast<size_t>(p)] == 0) fb.add_term(ex, c);
        }
        for (const auto& [ex, c] : d.b[u].terms())
            if (ex[0] > 0 && ex[static_cast<size_t>(p)] == 0) fb.add_term(ex, c);
        e.a.push_back(fa);
        e.b.push_back(fb);
    }
    auto es = solve_ricci_ivp(e);
    for (auto& row : cauchy_checks(e, es)) rows.push_back(row);
    double corr = 0;
    for (const Poly& q : es.corrections)
        for (const auto& [ex, c] : q.terms()) corr = std::max(corr, std::abs(c.get_d()));
    rows.push_back(info("cauchy.even.face_correction", "even split initial value problem", corr));
    return rows;
}

}  // namespace spinlab
