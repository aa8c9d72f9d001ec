#include "spinlab/polynomial.hpp"
#include "spinlab/samples.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spinlab;

namespace {

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Poly sample(int arity, Rng& rng) { return random_poly(arity, 0, 3, rng, 4, 0.4); }

}  // namespace

TEST(Poly, ArithmeticAndEval) {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly p = x * x * y + y * mpq_class(1, 3) - Poly::constant(2, 2);
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.coeff({2, 1}), 1);
    EXPECT_EQ(p.coeff({0, 1}), mpq_class(1, 3));
    EXPECT_EQ(p.eval(std::vector<mpq_class>{2, 3}), mpq_class(12 + 1 - 2));
    Vec v(2);
    v << 0.5, -1.5;
    EXPECT_NEAR(p.eval(v), 0.25 * -1.5 - 0.5 - 2, 1e-15);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(Poly(2).degree(), -1);
    EXPECT_THROW(p + Poly(3), std::invalid_argument);
    EXPECT_THROW(p.add_term({1}, 1), std::invalid_argument);
}

TEST(Poly, DerivTruncateEmbed) {
    Poly p(2);
    p.add_term({3, 2}, 2);
    p.add_term({1, 0}, 5);
    Poly dx = p.deriv(0);
    EXPECT_EQ(dx.coeff({2, 2}), 6);
    EXPECT_EQ(dx.coeff({0, 0}), 5);
    EXPECT_TRUE(p.deriv(1).deriv(1).deriv(1).is_zero());
    EXPECT_EQ(p.truncate(4).degree(), 1);
    Poly e = p.embed(4, {3, 1});
    EXPECT_EQ(e.coeff({0, 2, 0, 3}), 2);
    EXPECT_EQ(e.arity(), 4);
}

TEST(Monomials, CountsAndOrder) {
    for (int n = 1; n <= 5; ++n)
        for (int o = 0; o <= 5; ++o) {
            auto s = MonomialSet::get(n, o);
            EXPECT_EQ(s->size(), binom(n + o, o));
            for (int d = 0; d <= o; ++d) EXPECT_EQ(s->upto[static_cast<size_t>(d)], binom(n + d, d));
        }
    // Graded, and lexicographic with the first variable leading inside a degree.
    auto s = MonomialSet::get(3, 2);
    EXPECT_EQ(s->mons[1], (Exponent{1, 0, 0}));
    EXPECT_EQ(s->mons[4], (Exponent{2, 0, 0}));
    EXPECT_EQ(s->mons[9], (Exponent{0, 0, 2}));
    EXPECT_EQ(MonomialSet::get(3, 2).get(), s.get());
}

TEST(Jet, ProductMatchesPolynomialProduct) {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        Poly a = sample(3, rng), b = sample(3, rng);
        ExactJet ja = to_exact_jet(a, 4), jb = to_exact_jet(b, 4);
        EXPECT_EQ(from_exact_jet(ja * jb), (a * b).truncate(4));
        EXPECT_EQ(from_exact_jet(ja + jb), (a + b).truncate(4));
        EXPECT_EQ(from_exact_jet(ja.deriv(1)), a.deriv(1).truncate(3));
        EXPECT_EQ(ja.deriv(1).order(), 3);
    }
}

TEST(Jet, PartialsAgainstPolynomialDerivatives) {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        Poly p = sample(3, rng);
        Vec x = rng.normal_vec(3);
        Jet j = FreeFunction::polynomial(p).at(x, 3);
        EXPECT_NEAR(j.value(), p.eval(x), 1e-10);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(j.partial(i), p.deriv(i).eval(x), 1e-10);
            for (int k = 0; k < 3; ++k) EXPECT_NEAR(j.partial(i, k), p.deriv(i).deriv(k).eval(x), 1e-10);
        }
        EXPECT_NEAR(j.partial(Exponent{1, 1, 1}), p.deriv(0).deriv(1).deriv(2).eval(x), 1e-10);
    }
}

TEST(Jet, ElementaryFunctions) {
    Vec x(2);
    x << 0.3, -0.7;
    auto c = coordinate_jets(x, 3);
    Jet u = c[0] * c[1];
    double v = 0.3 * -0.7;
    Jet e = jet_exp(u), s = jet_sin(u), co = jet_cos(u);
    EXPECT_NEAR(e.value(), std::exp(v), 1e-15);
    // d/dx exp(xy) = y exp(xy), d^2/dxdy = (1 + xy) exp(xy)
    EXPECT_NEAR(e.partial(0), -0.7 * std::exp(v), 1e-14);
    EXPECT_NEAR(e.partial(0, 1), (1 + v) * std::exp(v), 1e-14);
    EXPECT_NEAR(s.partial(1), 0.3 * std::cos(v), 1e-14);
    EXPECT_NEAR(co.partial(0, 0), -0.49 * std::cos(v), 1e-14);
    Jet one = s * s + co * co;
    EXPECT_NEAR(one.value(), 1.0, 1e-15);
    for (int i = 1; i < one.set()->upto[3]; ++i) EXPECT_NEAR(one[i], 0.0, 1e-14);
}

TEST(Jet, Reciprocal) {
    Rng rng(3);
    Poly p = sample(2, rng) + Poly::constant(2, 7);
    ExactJet j = to_exact_jet(p, 5);
    ExactJet r = j.reciprocal();
    ExactJet one = j * r;
    EXPECT_EQ(one[0], 1);
    for (int i = 1; i < one.set()->upto[5]; ++i) EXPECT_EQ(one[i], 0);
    EXPECT_THROW(to_exact_jet(Poly::variable(2, 0), 3).reciprocal(), std::domain_error);
}

TEST(Jet, OrderBookkeeping) {
    auto c = coordinate_jets(Vec::Zero(2), 2);
    Jet a = c[0] * c[0];
    EXPECT_EQ(a.order(), 2);
    EXPECT_EQ(a.deriv(0).deriv(0).order(), 0);
    EXPECT_THROW(a.deriv(0).deriv(0).deriv(0), std::domain_error);
    EXPECT_THROW(a.deriv(2), std::out_of_range);
    // Mixed orders truncate to the smaller one.
    Jet b = a.truncate(1);
    EXPECT_EQ((a * b).order(), 1);
    EXPECT_EQ((a + b).order(), 1);
}

TEST(FreeFunction, FiniteDifferenceConsistency) {
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = FreeFunction::polynomial(sample(3, rng));
        EXPECT_LE(finite_difference_error(f, rng.normal_vec(3) * 0.5), 1e-6);
    }
    auto g = FreeFunction::from_jets(2, [](const std::vector<Jet>& a) { return jet_sin(a[0] * a[1]) + jet_exp(a[1]); }, "custom");
    EXPECT_LE(finite_difference_error(g, Vec::Constant(2, 0.4)), 1e-6);
    EXPECT_THROW(g(coordinate_jets(Vec::Zero(3), 1)), std::invalid_argument);
}

TEST(Samples, ExactKernel) {
    // x + y + z = 0, x - y = 0
    std::vector<std::vector<mpq_class>> rows{{1, 1, 1}, {1, -1, 0}};
    auto k = exact_kernel(rows, 3);
    ASSERT_EQ(k.size(), 1u);
    for (const auto& r : rows) {
        mpq_class s = 0;
        for (int i = 0; i < 3; ++i) s += r[static_cast<size_t>(i)] * k[0][static_cast<size_t>(i)];
        EXPECT_EQ(s, 0);
    }
    EXPECT_EQ(exact_kernel({}, 2).size(), 2u);
}

TEST(Samples, TraceFreeExact) {
    Rng rng(5);
    for (const FamilyTag& t : {FamilyTag{Family::PUREODD, 2}, FamilyTag{Family::PUREODD, 3}, FamilyTag{Family::PUREEVEN, 3},
                               FamilyTag{Family::M33NULL, 0}}) {
        auto f = trace_free_functions(t, 3, rng);
        const bool null = t.family == Family::M33NULL;
        const int p = null ? 3 : t.p;
        const int off = t.family == Family::PUREODD ? 1 : 0;
        auto get = [&](int i, int j) {
            if (i > j) std::swap(i, j);
            if (null) {
                if (j == 2) return Poly(6);
                return f[static_cast<size_t>(i == 0 ? (j == 0 ? 0 : 1) : 2)];
            }
            return f[static_cast<size_t>(pair_index(p, i, j))];
        };
        bool nonzero = false;
        for (const auto& q : f) nonzero = nonzero || !q.is_zero();
        EXPECT_TRUE(nonzero);
        for (int i = 0; i < p; ++i) {
            Poly s(2 * p + off);
            for (int j = 0; j < p; ++j) s = s + get(i, j).deriv(off + p + j);
            EXPECT_TRUE(s.is_zero()) << family_name(t) << " row " << i;
        }
    }
}
