#include "spinlab/cauchy.hpp"
#include "spinlab/geometry.hpp"
#include "spinlab/samples.hpp"

#include <gtest/gtest.h>

using namespace spinlab;

namespace {

Poly drop_var(const Poly& q, int var, int power) {
    Poly r(q.arity() - 1);
    for (const auto& [e, c] : q.terms()) {
        if (e[static_cast<size_t>(var)] != power) continue;
        Exponent f = e;
        f.erase(f.begin() + var);
        r.add_term(f, c);
    }
    return r;
}

Poly without(const Poly& q, int var) {
    Poly r(q.arity());
    for (const auto& [e, c] : q.terms())
        if (e[static_cast<size_t>(var)] == 0) r.add_term(e, c);
    return r;
}

CauchyData odd_data(int order, unsigned seed) {
    Rng rng(seed);
    CauchyData d;
    d.p = 2;
    d.order = order;
    d.a = trace_free_functions({Family::PUREEVEN, 2}, 3, rng);
    d.b = trace_free_functions({Family::PUREEVEN, 2}, 2, rng);
    return d;
}

CauchyData even_data(int order, unsigned seed) {
    Rng rng(seed);
    CauchyData d;
    d.p = 2;
    d.order = order;
    d.odd = false;
    for (const Poly& q : trace_free_functions({Family::PUREEVEN, 2}, 3, rng)) d.a.push_back(without(q, 0));
    auto extra = trace_free_functions({Family::PUREEVEN, 2}, 2, rng);
    for (size_t u = 0; u < d.a.size(); ++u) {
        Poly x1part = extra[u] - without(extra[u], 0);
        d.b.push_back(without(d.a[u], 2) + without(x1part, 2));
    }
    return d;
}

bool all_zero(const std::vector<JetSeries>& v) {
    for (const auto& j : v)
        if (lowest_degree(j) >= 0) return false;
    return true;
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Cauchy, ZeroDataGivesZero) {
    CauchyData d;
    d.p = 2;
    d.a.assign(3, Poly(4));
    d.b.assign(3, Poly(4));
    auto s = solve_ricci_ivp(d);
    for (const Poly& q : solution_polynomials(s)) EXPECT_TRUE(q.is_zero());
}

TEST(Cauchy, OneDimensionalIsLinearInZ) {
    // p = 1: the constraint forces a, b free of y and the right-hand side vanishes.
    CauchyData d;
    d.p = 1;
    d.order = 7;
    Poly x = Poly::variable(2, 0);
    d.a = {x * x * x - x * mpq_class(2)};
    d.b = {x * x + Poly::constant(2, 5)};
    auto s = solve_ricci_ivp(d);
    Poly z = Poly::variable(3, 0);
    Poly expect = d.a[0].embed(3, {1, 2}) + z * d.b[0].embed(3, {1, 2});
    EXPECT_EQ(solution_polynomials(s)[0], expect.truncate(7));
}

TEST(Cauchy, SecondZCoefficientMatchesDirectEvaluation) {
    auto d = odd_data(6, 11);
    auto s = solve_ricci_ivp(d);
    const int p = 2;
    auto A = [&](int j, int l) { return d.a[static_cast<size_t>(pair_index(p, j, l))]; };
    for (int j = 0; j < p; ++j)
        for (int l = j; l < p; ++l) {
            Poly r(4);
            for (int k = 0; k < p; ++k) r = r + A(j, l).deriv(k).deriv(p + k);
            for (int m = 0; m < p; ++m)
                for (int k = 0; k < p; ++k) {
                    r = r - A(m, k) * A(j, l).deriv(p + m).deriv(p + k);
                    r = r + A(m, j).deriv(p + k) * A(k, l).deriv(p + m);
                }
            Poly got = drop_var(from_exact_jet(s.at(j, l)), 0, 2);
            EXPECT_EQ(got, (r * mpq_class(1, 2)).truncate(4)) << j << l;
        }
}

TEST(Cauchy, OddConstraintPropagates) {
    for (int N : {6, 8}) {
        auto s = solve_ricci_ivp(odd_data(N, 12));
        EXPECT_TRUE(all_zero(constraint_residual(s))) << N;
        auto rep = verify_ricci_flat(s);
        EXPECT_EQ(rep.order, N - 2);
        EXPECT_TRUE(rep.zero) << "first nonzero degree " << rep.first_nonzero_degree;
    }
}

TEST(Cauchy, ViolatingDataRejectedOrReported) {
    auto d = odd_data(5, 13);
    d.a[0] = d.a[0] + Poly::variable(4, 2);
    EXPECT_THROW(solve_ricci_ivp(d), CauchyError);
    auto s = solve_ricci_ivp(d, {true});
    EXPECT_EQ(lowest_degree(constraint_residual(s)[0]), 0);
}

TEST(Cauchy, TruncationIsConsistent) {
    auto hi = solve_ricci_ivp(odd_data(8, 14));
    auto lo = solve_ricci_ivp(odd_data(6, 14));
    EXPECT_TRUE(same_coefficients(restrict_order(hi, 6), lo));
    EXPECT_TRUE(same_coefficients(solve_ricci_ivp(odd_data(6, 14)), lo));
}

TEST(Cauchy, RhsOnlySeesLowerZDegrees) {
    auto s = solve_ricci_ivp(odd_data(6, 15));
    const auto full = ivp_rhs(s);
    for (int k = 0; k <= 3; ++k) {
        CauchySolution cut = s;
        for (auto& f : cut.f) {
            const Poly full_f = from_exact_jet(f);
            Poly q(cut.vars());
            for (const auto& [e, c] : full_f.terms())
                if (e[0] <= k) q.add_term(e, c);
            f = to_exact_jet(q, cut.order);
        }
        const auto part = ivp_rhs(cut);
        for (size_t u = 0; u < full.size(); ++u)
            EXPECT_EQ(drop_var(from_exact_jet(part[u]), 0, k), drop_var(from_exact_jet(full[u]), 0, k)) << k;
    }
}

TEST(Cauchy, BadInputs) {
    auto d = odd_data(6, 16);
    d.order = 1;
    EXPECT_THROW(solve_ricci_ivp(d), CauchyError);
    d.order = 6;
    d.a.pop_back();
    EXPECT_THROW(solve_ricci_ivp(d), CauchyError);
    auto e = even_data(6, 16);
    e.a[0] = e.a[0] + Poly::variable(4, 0);
    EXPECT_THROW(solve_ricci_ivp(e), CauchyError);
    e = even_data(6, 16);
    e.b[1] = e.b[1] + Poly::variable(4, 3);
    EXPECT_THROW(solve_ricci_ivp(e), CauchyError);
}

TEST(Cauchy, EvenGoursatPipeline) {
    auto d = even_data(6, 17);
    auto s = solve_ricci_ivp(d);
    EXPECT_TRUE(verify_ricci_flat(s).zero);
    EXPECT_TRUE(all_zero(constraint_residual(s)));
    ASSERT_EQ(s.corrections.size(), 3u);
    // Corrections sit on the face y1 = 0 and vanish with x1.
    for (const Poly& c : s.corrections)
        for (const auto& [e, v] : c.terms()) {
            EXPECT_EQ(e[2], 0);
            EXPECT_GT(e[0], 0);
        }
    // Off the correction, the data are reproduced on both faces.
    auto f = solution_polynomials(s);
    for (size_t u = 0; u < f.size(); ++u) {
        EXPECT_EQ(drop_var(f[u], 0, 0), drop_var(d.a[u], 0, 0).truncate(6));
        EXPECT_EQ(drop_var(f[u] - s.corrections[u], 2, 0), drop_var(d.b[u], 2, 0).truncate(6));
    }
}

TEST(Cauchy, EvenSolutionAgreesWithNumericRicci) {
    const int N = 6;
    auto s = solve_ricci_ivp(even_data(N, 18));
    auto m = build_metric({Family::PUREEVEN, 2}, as_functions(solution_polynomials(s)));
    Rng rng(3);
    Vec dir = rng.normal_vec(4).normalized();
    const double r1 = max_abs(ricci_numeric(m, dir * 0.02));
    const double r2 = max_abs(ricci_numeric(m, dir * 0.01));
    EXPECT_LE(r1, 1e-6);
    // Remainder starts at degree N - 1.
    EXPECT_GE(r1 / std::max(r2, 1e-300), 8.0);
}

TEST(Cauchy, OddSolutionClosedFormRicci) {
    const int N = 6;
    auto s = solve_ricci_ivp(odd_data(N, 19));
    const FamilyTag tag{Family::PUREODD, 2};
    auto fns = as_functions(solution_polynomials(s));
    auto m = build_metric(tag, fns);
    Rng rng(4);
    Vec x = rng.normal_vec(5).normalized() * 0.01;
    EXPECT_LE(max_abs(ricci_closed_form(tag, fns, x)), 1e-8);
    // The numeric Ricci keeps the -f_zz part that the closed form doubles with the opposite sign.
    const double numeric = max_abs(ricci_numeric(m, x));
    EXPECT_GT(numeric, 1e-3);
}

TEST(Cauchy, OracleFormSolutionIsRicciFlat) {
    // Solving f_zz = -2 rhs instead: the coordinate Ricci of the truncated metric then vanishes to order N - 2.
    const int N = 6;
    auto d = odd_data(N, 19);
    auto s = solve_ricci_ivp(d, {false, RicciForm::Oracle});
    EXPECT_TRUE(all_zero(constraint_residual(s)));
    EXPECT_TRUE(verify_ricci_flat(s).zero);
    EXPECT_FALSE(same_coefficients(s, solve_ricci_ivp(d)));
    auto m = build_metric({Family::PUREODD, 2}, as_functions(solution_polynomials(s)));
    Rng rng(4);
    Vec dir = rng.normal_vec(5).normalized();
    const double r1 = max_abs(ricci_numeric(m, dir * 0.02));
    const double r2 = max_abs(ricci_numeric(m, dir * 0.01));
    EXPECT_LE(r1, 1e-6);
    EXPECT_GE(r1 / std::max(r2, 1e-300), 8.0);
}
