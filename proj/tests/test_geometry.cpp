#include "spinlab/geometry.hpp"
#include "spinlab/octo_spin.hpp"
#include "spinlab/samples.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace spinlab;

namespace {

FreeFunction poly(int arity, std::vector<std::pair<Exponent, int>> terms) {
    Poly p(arity);
    for (auto& [e, c] : terms) p.add_term(e, c);
    return FreeFunction::polynomial(p);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

const std::vector<FamilyTag>& all_tags() {
    static const std::vector<FamilyTag> t = {
        {Family::M21, 0},    {Family::M31, 0},     {Family::M22GEN, 0},  {Family::M22DEG, 0},
        {Family::M41DEG, 0}, {Family::M51NULL, 0}, {Family::M33GEN, 0},  {Family::M33NULL, 0},
        {Family::PUREODD, 1}, {Family::PUREODD, 2}, {Family::PUREODD, 3}, {Family::PUREEVEN, 2},
        {Family::PUREEVEN, 3}};
    return t;
}

// Round 2-sphere in (theta, phi).
CoordinateMetric sphere() {
    CoordinateMetric m;
    m.n = 2;
    m.signature = {2, 0};
    m.coords = {"theta", "phi"};
    m.components = [](const std::vector<Jet>& x) {
        JetMat g(2, 2, Jet(x[0].set(), x[0].order()));
        g(0, 0) = g(0, 0) + 1.0;
        Jet s = jet_sin(x[0]);
        g(1, 1) = s * s;
        return g;
    };
    return m;
}

}  // namespace

TEST(Geometry, FamilyNamesRoundTrip) {
    for (const auto& t : all_tags()) {
        FamilyTag back = parse_family(family_name(t));
        EXPECT_EQ(back.family, t.family);
        EXPECT_EQ(back.p, t.p);
    }
    EXPECT_THROW(parse_family("M99"), MetricError);
    EXPECT_THROW(parse_family("PUREODD(x)"), MetricError);
}

TEST(Geometry, ArityMismatchRejected) {
    EXPECT_THROW(build_metric({Family::M21, 0}, {FreeFunction::zero(3)}), MetricError);
    EXPECT_THROW(build_metric({Family::M21, 0}, {}), MetricError);
    EXPECT_THROW(build_metric({Family::PUREODD, 2}, {FreeFunction::zero(5)}), MetricError);
}

TEST(Geometry, SphereHasPositiveRicci) {
    CoordinateMetric m = sphere();
    Vec x(2);
    x << 1.1, 0.3;
    Mat ric = ricci_numeric(m, x);
    // Unit sphere: Ric = g.
    EXPECT_NEAR(ric(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(ric(1, 1), std::sin(1.1) * std::sin(1.1), 1e-12);
    EXPECT_NEAR(ric(0, 1), 0.0, 1e-12);
}

TEST(Geometry, FlatExamples) {
    Vec x = Vec::Constant(3, 0.2);
    auto m = build_metric({Family::M21, 0}, {FreeFunction::zero(2)});
    EXPECT_LE(max_abs(ricci_numeric(m, x)), 1e-14);
    Mat g = m.at(x);
    EXPECT_DOUBLE_EQ(g(0, 2), 0.5);
    EXPECT_DOUBLE_EQ(g(1, 1), -1.0);
    // f linear in x21: still flat.
    auto lin = build_metric({Family::M21, 0}, {poly(2, {{{1, 0}, 3}, {{0, 0}, 1}})});
    auto c = curvature(lin, x);
    double r = 0;
    for (double v : c.riemann) r = std::max(r, std::abs(v));
    EXPECT_LE(r, 1e-10);

    std::vector<FreeFunction> zero(6, FreeFunction::zero(7));
    auto pure = build_metric({Family::PUREODD, 3}, zero);
    Vec y = Vec::Constant(7, -0.1);
    EXPECT_LE(max_abs(ricci_numeric(pure, y)), 1e-14);
    EXPECT_LE(max_abs(ricci_closed_form(pure, y)), 1e-14);
    Rng rng(1);
    EXPECT_EQ(holonomy_span(pure, probe_points(pure, rng, 2)).dimension, 0);
}

TEST(Geometry, SignatureAndGram) {
    Rng rng(2);
    for (const auto& t : all_tags()) {
        auto m = build_metric(t, sample_functions(t, rng));
        for (const Vec& x : probe_points(m, rng, 3)) {
            EXPECT_EQ(signature(m.at(x)), m.signature) << family_name(t);
            EXPECT_LE(coframe_gram_residual(m, x), 1e-12) << family_name(t);
        }
    }
}

TEST(Geometry, SampledFunctionsSatisfyConstraints) {
    Rng rng(3);
    for (const auto& t : all_tags()) {
        auto m = build_metric(t, sample_functions(t, rng));
        auto rep = constraint_check(m, probe_points(m, rng, 5));
        EXPECT_LE(rep.max(), 1e-12) << family_name(t);
    }
    auto m = build_metric({Family::M33GEN, 0}, {poly(6, {{{1, 0, 0, 1, 0, 0}, 1}, {{0, 1, 0, 0, 1, 0}, 1}, {{0, 0, 1, 0, 0, 1}, 1}})});
    EXPECT_EQ(constraint_check(m, {Vec::Zero(6)}).max(), 0.0);
}

TEST(Geometry, ConstraintViolationsReported) {
    // f11 = y1 for PUREEVEN(2): d f1j/dy_j = 1.
    std::vector<FreeFunction> f{poly(4, {{{0, 0, 1, 0}, 1}}), FreeFunction::zero(4), FreeFunction::zero(4)};
    auto m = build_metric({Family::PUREEVEN, 2}, f);
    auto rep = constraint_check(m, {Vec::Zero(4)});
    ASSERT_EQ(rep.residuals.size(), 2u);
    EXPECT_DOUBLE_EQ(rep.residuals[0], 1.0);
    EXPECT_DOUBLE_EQ(rep.residuals[1], 0.0);
    // Antisymmetric potential: f11 = y2, f12 = -y1/2 ... row 1 is d(y2)/dy1 + d(-y1/2)/dy2 = 0.
    Poly f12(5);
    f12.add_term({0, 0, 0, 1, 0}, mpq_class(-1, 2));
    std::vector<FreeFunction> g{poly(5, {{{0, 0, 0, 0, 1}, 1}}), FreeFunction::polynomial(f12), FreeFunction::zero(5)};
    auto odd = build_metric({Family::PUREODD, 2}, g);
    EXPECT_LE(constraint_check(odd, {Vec::Constant(5, 0.3)}).residuals[0], 1e-14);
    // det H = 1 fails for f = 2 x.y
    EXPECT_THROW(build_metric({Family::M33GEN, 0}, {poly(6, {{{1, 0, 0, 1, 0, 0}, 2}, {{0, 1, 0, 0, 1, 0}, 1}, {{0, 0, 1, 0, 0, 1}, 1}})}),
                 MetricError);
}

TEST(Geometry, JetRicciMatchesFiniteDifferences) {
    Rng rng(4);
    for (const auto& t : all_tags()) {
        auto m = build_metric(t, sample_functions(t, rng));
        for (const Vec& x : probe_points(m, rng, 2, 0.3)) {
            Mat a = ricci_numeric(m, x);
            Mat b = ricci_finite_difference(m, x);
            EXPECT_LE(max_abs(a - b), 1e-5 * std::max(1.0, max_abs(a))) << family_name(t);
        }
    }
}

TEST(Geometry, AdaptedConnectionLiesInStabilizer) {
    Rng rng(5);
    for (const auto& t : all_tags()) {
        for (int draw = 0; draw < 2; ++draw) {
            auto m = build_metric(t, sample_functions(t, rng));
            for (const Vec& x : probe_points(m, rng, 5)) {
                auto c = adapted_connection_check(m, x);
                EXPECT_LE(c.gram_residual, 1e-12) << family_name(t);
                EXPECT_LE(c.skew_residual, 1e-10) << family_name(t);
                EXPECT_LE(c.residual, 1e-9) << family_name(t);
            }
        }
    }
}

TEST(Geometry, StabilizerDimensions) {
    std::map<std::string, int> expect = {{"M21", 1},         {"M31", 2},         {"M22GEN", 2},     {"M22DEG", 4},
                                         {"M41DEG", 3},      {"M51NULL", 4},     {"M33GEN", 8},     {"M33NULL", 11},
                                         {"PUREODD(1)", 1},  {"PUREODD(2)", 6},  {"PUREODD(3)", 14}, {"PUREEVEN(2)", 4},
                                         {"PUREEVEN(3)", 11}};
    Rng rng(6);
    for (const auto& t : all_tags()) {
        auto m = build_metric(t, sample_functions(t, rng));
        EXPECT_EQ(span_basis(m.stabilizer).cols(), expect.at(family_name(t))) << family_name(t);
        Mat s = span_basis(m.stabilizer);
        for (const Mat& a : m.stabilizer)
            for (const Mat& b : m.stabilizer)
                EXPECT_LE(residual_from_span(s, flatten(commutator(a, b))), 1e-10) << family_name(t);
    }
}

TEST(Geometry, PureOddConnectionMatchesDisplay) {
    // phi^i_j = -d f_jk/dy_i dx^k, tau_i = d f_ik/dz dx^k, sigma from the display; alpha = [[0,-tau*,0],[0,phi,0],[tau,sigma,-phi*]].
    Rng rng(7);
    const int p = 3;
    auto fns = as_functions(trace_free_functions({Family::PUREODD, p}, 3, rng));
    auto m = build_metric({Family::PUREODD, p}, fns);
    for (const Vec& x : probe_points(m, rng, 3)) {
        auto jets = coordinate_jets(x, 1);
        std::vector<std::vector<Jet>> f(p, std::vector<Jet>(p));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) f[static_cast<size_t>(i)][static_cast<size_t>(j)] = fns[static_cast<size_t>(pair_index(p, i, j))](jets);
        auto F = [&](int i, int j) -> const Jet& { return f[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
        auto c = adapted_connection_check(m, x);
        for (int k = 0; k < p; ++k) {
            const Mat& a = c.alpha[static_cast<size_t>(1 + k)];  // evaluated on d/dx^k
            Mat want = Mat::Zero(2 * p + 1, 2 * p + 1);
            for (int i = 0; i < p; ++i) {
                const double tau = F(i, k).partial(0);
                want(1 + p + i, 0) = tau;
                want(0, 1 + i) = -tau;
                for (int j = 0; j < p; ++j) {
                    const double phi = -F(j, k).partial(1 + p + i);
                    want(1 + i, 1 + j) = phi;
                    want(1 + p + j, 1 + p + i) = -phi;
                    double sigma = F(i, k).partial(1 + j) - F(j, k).partial(1 + i);
                    for (int l = 0; l < p; ++l)
                        sigma += F(i, l).value() * F(j, k).partial(1 + p + l) - F(j, l).value() * F(i, k).partial(1 + p + l);
                    want(1 + p + i, 1 + j) = sigma;
                }
            }
            EXPECT_LE(max_abs(a - want), 1e-10);
        }
        // z and y directions carry no connection.
        EXPECT_LE(max_abs(c.alpha[0]), 1e-12);
        for (int k = 0; k < p; ++k) EXPECT_LE(max_abs(c.alpha[static_cast<size_t>(1 + p + k)]), 1e-12);
    }
}

TEST(Geometry, RicciCalibrationConstants) {
    // closed form = c * numeric, frozen from the oracle fit.
    const std::vector<std::pair<FamilyTag, double>> cases = {{{Family::M31, 0}, 2.0},     {{Family::M22GEN, 0}, 0.5},
                                                             {{Family::M22DEG, 0}, 1.0},  {{Family::M41DEG, 0}, 1.0},
                                                             {{Family::M51NULL, 0}, 2.0}, {{Family::PUREEVEN, 2}, 1.0},
                                                             {{Family::PUREEVEN, 3}, 1.0}, {{Family::M33NULL, 0}, 1.0}};
    Rng rng(8);
    for (const auto& [t, c] : cases) {
        for (int draw = 0; draw < 3; ++draw) {
            auto m = build_metric(t, sample_functions(t, rng));
            auto fit = compare_ricci(m, probe_points(m, rng, 5));
            EXPECT_NEAR(fit.constant, c, 1e-8) << family_name(t);
            auto fixed = compare_ricci(m, probe_points(m, rng, 5), c);
            EXPECT_LE(fixed.max_relative_error, 1e-8) << family_name(t);
            EXPECT_GT(fixed.max_numeric, 1e-3) << family_name(t);
        }
    }
}

TEST(Geometry, PureOddRicciWithoutZDependence) {
    // z-free data: the closed form agrees with the oracle exactly (c = 1).
    Rng rng(9);
    for (int p = 1; p <= 3; ++p) {
        auto polys = trace_free_functions({Family::PUREODD, p}, 3, rng);
        for (auto& f : polys) {
            Poly g(f.arity());
            for (const auto& [e, c] : f.terms())
                if (e[0] == 0) g.add_term(e, c);
            f = g;
        }
        auto m = build_metric({Family::PUREODD, p}, as_functions(polys));
        auto fixed = compare_ricci(m, probe_points(m, rng, 5), 1.0);
        EXPECT_LE(fixed.max_relative_error, 1e-8) << p;
    }
}

TEST(Geometry, PureOddZTermDisagreesWithOracle) {
    // f11 = z^2 on PUREODD(1): the metric is a plane wave with Ric_xx = -f_zz = -2,
    // while the closed form gives 2 f_zz = 4. Frozen as a known discrepancy.
    auto m = build_metric({Family::PUREODD, 1}, {poly(3, {{{2, 0, 0}, 1}})});
    Vec x(3);
    x << 0.1, 0.2, 0.3;
    EXPECT_NEAR(ricci_numeric(m, x)(1, 1), -2.0, 1e-12);
    EXPECT_NEAR(ricci_closed_form(m, x)(1, 1), 4.0, 1e-12);
}

TEST(Geometry, RicciFlatIffHarmonic) {
    Rng rng(10);
    for (Family fam : {Family::M31, Family::M41DEG, Family::M51NULL, Family::M22GEN}) {
        FamilyTag t{fam, 0};
        for (int draw = 0; draw < 3; ++draw) {
            auto m = build_metric(t, harmonic_functions(t, rng));
            for (const Vec& x : probe_points(m, rng, 3)) {
                EXPECT_LE(max_abs(ricci_numeric(m, x)), 1e-8) << family_name(t);
                EXPECT_LE(max_abs(ricci_closed_form(m, x)), 1e-8) << family_name(t);
            }
        }
        auto w = build_metric(t, witness_functions(t));
        for (const Vec& x : probe_points(w, rng, 3)) EXPECT_GE(max_abs(ricci_numeric(w, x)), 0.1) << family_name(t);
    }
    // |s|^2 on M41DEG: Laplacian 6, Ricci proportional to dx^2.
    auto w = build_metric({Family::M41DEG, 0}, witness_functions({Family::M41DEG, 0}));
    Vec x = Vec::Constant(5, 0.1);
    Mat r = ricci_numeric(w, x);
    EXPECT_NEAR(std::abs(r(0, 0)), 6.0, 1e-10);
    r(0, 0) = 0;
    EXPECT_LE(max_abs(r), 1e-12);
}

TEST(Geometry, HolonomySpans) {
    Rng rng(11);
    auto deg = build_metric({Family::M22DEG, 0}, sample_functions({Family::M22DEG, 0}, rng));
    auto h = holonomy_span(deg, probe_points(deg, rng, 3));
    EXPECT_EQ(h.dimension, 4);
    EXPECT_EQ(h.reference, 4);
    EXPECT_LE(h.outside, 1e-10);
    for (int p = 2; p <= 3; ++p) {
        auto m = build_metric({Family::PUREODD, p}, as_functions(quadratic_family(p, rng)));
        auto hp = holonomy_span(m, probe_points(m, rng, 3));
        EXPECT_EQ(hp.dimension, p + (p * p - 1) + p * (p - 1) / 2) << p;
        EXPECT_EQ(hp.dimension, hp.reference) << p;
        EXPECT_LE(hp.outside, 1e-10);
    }
    for (const auto& t : all_tags()) {
        auto m = build_metric(t, sample_functions(t, rng));
        auto e = holonomy_span(m, probe_points(m, rng, 3));
        EXPECT_LE(e.dimension, e.reference) << family_name(t);
        EXPECT_LE(e.outside, 1e-10) << family_name(t);
    }
}

TEST(Geometry, QuadraticFamilyShape) {
    Rng rng(12);
    auto f = quadratic_family(3, rng);
    ASSERT_EQ(f.size(), 6u);
    for (const auto& q : f)
        for (const auto& [e, c] : q.terms()) {
            int deg = 0;
            for (int k : e) deg += k;
            EXPECT_EQ(deg, 2);
            for (int i = 1; i <= 3; ++i) EXPECT_EQ(e[static_cast<size_t>(i)], 0);
        }
}

TEST(Geometry, CurvatureSpace) {
    std::vector<Mat> so4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Mat a = Mat::Zero(4, 4);
            a(i, j) = 1;
            a(j, i) = -1;
            so4.push_back(a);
        }
    auto c = curvature_space(so4);
    EXPECT_EQ(c.dimension, 20);
    EXPECT_EQ(c.modular_rank, 36 - 20);
    EXPECT_EQ(curvature_space_dim({Mat::Zero(5, 5)}), 0);
    // so(3): 6 = n^2(n^2-1)/12
    std::vector<Mat> so3(so4.begin(), so4.begin() + 0);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Mat a = Mat::Zero(3, 3);
            a(i, j) = 1;
            a(j, i) = -1;
            so3.push_back(a);
        }
    EXPECT_EQ(curvature_space_dim(so3), 6);
}

TEST(Geometry, CurvatureSpace101) {
    auto t0 = std::chrono::steady_clock::now();
    auto stab = rho_prime_stabilizer();
    ASSERT_EQ(stab.size(), 30u);
    auto c = curvature_space(stab);
    EXPECT_EQ(c.algebra_dim, 30);
    EXPECT_EQ(c.dimension, 325);
    ASSERT_TRUE(c.exact_basis);
    EXPECT_EQ(c.modular_rank, c.float_rank);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 120.0);
}

TEST(Geometry, ModularRank) {
    EXPECT_EQ(modular_rank({{1, 2}, {2, 4}}), 1);
    EXPECT_EQ(modular_rank({{1, 2}, {3, 4}}), 2);
    EXPECT_EQ(modular_rank({{0, 0}}), 0);
    EXPECT_EQ(modular_rank({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}}), 2);
}

TEST(Geometry, Spin7FourForm) {
    auto phi = spin7_four_form();
    // Cayley form: 14 nonzero components of absolute value 1.
    EXPECT_EQ(phi.size(), 14u);
    for (const auto& [k, v] : phi) EXPECT_NEAR(std::abs(v), 1.0, 1e-10);
}

class Metric101 : public ::testing::Test {
protected:
    FreeFunction g = poly(2, {{{2, 1}, 1}, {{1, 2}, 2}, {{3, 0}, 1}, {{0, 1}, 1}});
    Rng rng{13};
};

TEST_F(Metric101, FlatFiberWithGenericG) {
    auto m = build_metric_10_1(FiberFamily::identity(), g);
    EXPECT_EQ(m.n, 11);
    double ric = 0;
    for (const Vec& x : probe_points(m, rng, 5)) {
        auto c = adapted_connection_check(m, x);
        EXPECT_LE(c.residual, 1e-9);
        EXPECT_LE(c.gram_residual, 1e-12);
        EXPECT_EQ(signature(m.at(x)), std::make_pair(10, 1));
        ric = std::max(ric, max_abs(ricci_numeric(m, x)));
        for (const auto& form : m.parallel_forms) EXPECT_LE(covariant_derivative_norm(m, form, x), 1e-9) << form.name;
    }
    EXPECT_GT(ric, 0.1);
}

TEST_F(Metric101, ZeroGIsFlat) {
    auto m = build_metric_10_1(FiberFamily::identity(), FreeFunction::zero(2));
    for (const Vec& x : probe_points(m, rng, 2)) {
        auto c = curvature(m, x);
        double r = 0;
        for (double v : c.riemann) r = std::max(r, std::abs(v));
        EXPECT_EQ(r, 0.0);
    }
}

TEST_F(Metric101, FiberVariations) {
    auto sp = spin7_basis();
    Mat s7 = Mat::Zero(8, 8);
    for (const Mat& a : sp) s7 += 0.3 * rng.normal() * a;
    Mat conformal = s7 + 0.4 * Mat::Identity(8, 8);
    // Unit element of so(8) orthogonal to spin(7).
    Mat so = Mat::Zero(64, 28);
    int k = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            Mat a = Mat::Zero(8, 8);
            a(i, j) = 1;
            a(j, i) = -1;
            so.col(k++) = flatten(a);
        }
    Mat q = span_basis(sp);
    Mat perp = range_basis(so - q * (q.transpose() * so));
    ASSERT_EQ(perp.cols(), 7);
    Mat bad = 0.5 * unflatten(perp.col(0), 8, 8);
    Mat sym = rng.normal_mat(8, 8);
    sym = 0.2 * (sym + sym.transpose());
    sym -= sym.trace() / 8 * Mat::Identity(8, 8);

    for (const Mat& s : {s7, conformal}) {
        auto m = build_metric_10_1(FiberFamily::exponential(s, "ok"), g);
        for (const Vec& x : probe_points(m, rng, 3)) {
            EXPECT_LE(adapted_connection_check(m, x).residual, 1e-9);
            for (const auto& form : m.parallel_forms) EXPECT_LE(covariant_derivative_norm(m, form, x), 1e-9) << form.name;
        }
    }
    for (const Mat& s : {bad, sym}) {
        auto m = build_metric_10_1(FiberFamily::exponential(s, "bad"), g);
        double worst = 0, phi = 0;
        for (const Vec& x : probe_points(m, rng, 3)) {
            worst = std::max(worst, adapted_connection_check(m, x).residual);
            phi = std::max(phi, covariant_derivative_norm(m, m.parallel_forms[2], x));
        }
        EXPECT_GT(worst, 0.01);
        EXPECT_GT(phi, 0.01);
    }
}

TEST_F(Metric101, RejectsX1Dependence) {
    Poly p(11);
    p.add_term({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 1);
    EXPECT_THROW(build_metric_10_1(FiberFamily::identity(), FreeFunction::polynomial(p)), MetricError);
    EXPECT_THROW(build_metric_10_1(FiberFamily::identity(), FreeFunction::zero(3)), MetricError);
    Poly ok(11);
    ok.add_term({0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0}, 1);
    ok.add_term({0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0}, 1);
    EXPECT_NO_THROW(build_metric_10_1(FiberFamily::identity(), FreeFunction::polynomial(ok)));
}

TEST_F(Metric101, HolonomyReported) {
    auto m = build_metric_10_1(FiberFamily::identity(), g);
    auto h = holonomy_span(m, probe_points(m, rng, 3));
    EXPECT_EQ(h.reference, 30);
    EXPECT_LE(h.dimension, 30);
    EXPECT_GT(h.dimension, 0);
    EXPECT_LE(h.outside, 1e-10);
}
