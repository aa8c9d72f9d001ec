#include "spinlab/clifford.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spinlab;

namespace {

// Definite-signature entries of the periodic table, extended to all (p, q)
// with Cl(p+1, q+1) = Cl(p, q) (x) R(2).
CliffordClass oracle(int p, int q) {
    static const CliffordClass pos[9] = {
        {Ring::R, 1, 1}, {Ring::C, 1, 1}, {Ring::H, 1, 1}, {Ring::H, 1, 2}, {Ring::H, 2, 1},
        {Ring::C, 4, 1}, {Ring::R, 8, 1}, {Ring::R, 8, 2}, {Ring::R, 16, 1}};
    static const CliffordClass neg[9] = {
        {Ring::R, 1, 1}, {Ring::R, 1, 2}, {Ring::R, 2, 1}, {Ring::C, 2, 1}, {Ring::H, 2, 1},
        {Ring::H, 2, 2}, {Ring::H, 4, 1}, {Ring::C, 8, 1}, {Ring::R, 16, 1}};
    int m = std::min(p, q);
    CliffordClass c = (p >= q) ? pos[p - m] : neg[q - m];
    c.size <<= m;
    return c;
}

}  // namespace

TEST(Clifford, RelationsHoldForAllSignatures) {
    for (int n = 0; n <= 11; ++n)
        for (int p = 0; p <= n; ++p) {
            CliffordModel m = build_algebra(p, n - p);
            EXPECT_LE(m.relation_residual(), 1e-12) << p << "," << n - p;
            EXPECT_EQ(static_cast<int>(m.gens.size()), n);
        }
    EXPECT_THROW(build_algebra(6, 6), std::invalid_argument);
}

TEST(Clifford, ClassificationMatchesTable) {
    int count = 0;
    for (int n = 0; n <= 8; ++n)
        for (int p = 0; p <= n; ++p) {
            int q = n - p;
            CliffordClass got = classify_model(build_algebra(p, q));
            EXPECT_EQ(got, oracle(p, q)) << p << "," << q << " got " << got.str();
            EXPECT_EQ(clifford_table(p, q), oracle(p, q));
            ++count;
        }
    EXPECT_EQ(count, 45);
}

TEST(Clifford, NamedEntries) {
    EXPECT_EQ(classify_model(build_algebra(2, 0)), (CliffordClass{Ring::H, 1, 1}));
    EXPECT_EQ(classify_model(build_algebra(1, 1)), (CliffordClass{Ring::R, 2, 1}));
    EXPECT_EQ(classify_model(build_algebra(8, 0)), (CliffordClass{Ring::R, 16, 1}));
    EXPECT_EQ(classify_model(build_algebra(3, 0)), (CliffordClass{Ring::H, 1, 2}));
    EXPECT_EQ(classify_model(build_algebra(0, 1)), (CliffordClass{Ring::R, 1, 2}));
    EXPECT_EQ(classify_model(build_algebra(5, 0)), (CliffordClass{Ring::C, 4, 1}));
}

TEST(Clifford, EvenSubalgebraMatchesOneLower) {
    for (int n = 0; n <= 7; ++n)
        for (int p = 0; p <= n; ++p) {
            int q = n - p;
            CliffordModel big = build_algebra(p + 1, q);
            auto mons = even_monomials(big);
            EXPECT_EQ(static_cast<int>(mons.size()), 1 << n);
            CliffordModel small = build_algebra(p, q);
            int zc = n == 0 ? 1 : center_dimension(small.monomials(), small.gens);
            int ze = n == 0 ? 1 : center_dimension(mons, even_generators(big));
            EXPECT_EQ(ze, zc) << p << "," << q;
            if (n > 0) EXPECT_EQ(classify_span(mons, even_generators(big)), classify_model(small));
        }
}

TEST(Clifford, TwistedReflection) {
    CliffordModel m = build_algebra(3, 0);
    Rng rng(11);
    Vec v = rng.normal_vec(3);
    v /= std::sqrt(m.form(v, v));
    EXPECT_LT((twisted_reflection(m, v, v) + v).norm(), 1e-12);
    Vec w = rng.normal_vec(3);
    Vec perp = w - m.form(v, w) * v;
    EXPECT_LT((twisted_reflection(m, v, perp) - perp).norm(), 1e-12);
    for (int t = 0; t < 20; ++t) {
        Vec a = rng.normal_vec(3), b = rng.normal_vec(3);
        Vec expect = b - 2.0 * a.dot(b) / a.dot(a) * a;
        EXPECT_LT((twisted_reflection(m, a, b) - expect).norm(), 1e-12 * b.norm());
    }
    CliffordModel split = build_algebra(2, 1);
    Vec null(3);
    null << 1, 0, 1;
    EXPECT_THROW(twisted_reflection(split, null, null), std::invalid_argument);
}

TEST(Clifford, ReflectionProductsPreserveForm) {
    Rng rng(12);
    for (auto [p, q] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{4, 3}, std::pair{1, 4}}) {
        CliffordModel m = build_algebra(p, q);
        Mat eta = Mat::Zero(m.n(), m.n());
        for (int i = 0; i < m.n(); ++i) eta(i, i) = m.eta[static_cast<size_t>(i)];
        for (int t = 0; t < 10; ++t) {
            Vec v = rng.normal_vec(m.n()), w = rng.normal_vec(m.n());
            if (std::abs(m.form(v, v)) < 0.1 || std::abs(m.form(w, w)) < 0.1) continue;
            Mat r = reflection_matrix(m, v) * reflection_matrix(m, w);
            EXPECT_LT((r.transpose() * eta * r - eta).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(Clifford, SpinorDimensions) {
    EXPECT_EQ(spin_representation(4, 3).spinor_dim, 8);
    EXPECT_EQ(spin_representation(2, 1).spinor_dim, 2);
    EXPECT_EQ(spin_representation(10, 1).spinor_dim, 32);
    EXPECT_EQ(spin_representation(4, 4).spinor_dim, 16);
    EXPECT_EQ(spin_representation(2, 0).spinor_dim, 2);
    EXPECT_EQ(spin_representation(3, 0).spinor_dim, 4);
}

TEST(Clifford, SpinBasisClosesAndMatchesVectorAction) {
    for (auto [p, q] : {std::pair{4, 3}, std::pair{2, 2}, std::pair{3, 2}}) {
        SpinAlgebraBasis b = spin_representation(p, q);
        ASSERT_EQ(static_cast<int>(b.basis.size()), (p + q) * (p + q - 1) / 2);
        Mat span = span_basis(b.basis);
        EXPECT_EQ(span.cols(), static_cast<Eigen::Index>(b.basis.size()));
        for (size_t i = 0; i < b.basis.size(); ++i)
            for (size_t j = 0; j < b.basis.size(); ++j)
                EXPECT_LE(residual_from_span(span, flatten(commutator(b.basis[i], b.basis[j]))), 1e-10);
        CliffordModel m = build_algebra(p, q);
        Rng rng(13);
        Vec w = rng.normal_vec(p + q);
        for (size_t k = 0; k < b.basis.size(); ++k) {
            auto [i, j] = b.pairs[k];
            Mat x = m.gens[static_cast<size_t>(i)] * m.gens[static_cast<size_t>(j)];
            Mat lhs = commutator(x, m.vector(w));
            Mat rhs = m.vector(b.vector_action(static_cast<int>(k)) * w);
            EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}
