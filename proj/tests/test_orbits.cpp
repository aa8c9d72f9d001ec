#include "spinlab/orbits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <Eigen/Eigenvalues>

#include <map>

using namespace spinlab;

namespace {

struct Expect {
    int group;
    int vector;
    int p, q;
};

const std::map<std::string, Expect>& expectations() {
    static const std::map<std::string, Expect> e = {
        {"SPIN2", {1, 2, 2, 0}},   {"SPIN11", {1, 2, 1, 1}},  {"SPIN3", {3, 3, 3, 0}},   {"SPIN21", {3, 3, 2, 1}},
        {"SPIN4", {6, 4, 4, 0}},   {"SPIN31", {6, 4, 3, 1}},  {"SPIN22", {6, 4, 2, 2}},  {"SPIN5", {10, 5, 5, 0}},
        {"SPIN41", {10, 5, 4, 1}}, {"SPIN32", {10, 5, 3, 2}}, {"SPIN6", {15, 6, 6, 0}},  {"SPIN51", {15, 6, 5, 1}},
        {"SPIN42", {15, 6, 4, 2}}, {"SPIN33", {15, 6, 3, 3}}};
    return e;
}

double scale_of(const Vec& s) { return std::max(1.0, s.squaredNorm()); }

}  // namespace

TEST(Orbits, DimensionsAndVectorSignature) {
    for (const auto& name : model_names()) {
        SpinOrbitModel m = make_model(name);
        const Expect& e = expectations().at(name);
        EXPECT_EQ(m.group_dim(), e.group) << name;
        EXPECT_EQ(m.vector_dim, e.vector) << name;
        auto [pos, neg] = signature(vector_gram(m));
        // The overall sign of the form is a convention; compare as an unordered pair.
        bool ok = (pos == e.p && neg == e.q) || (pos == e.q && neg == e.p);
        EXPECT_TRUE(ok) << name << " signature " << pos << "," << neg;
        EXPECT_EQ(span_basis(m.lie_basis).cols(), e.group) << name;
    }
}

TEST(Orbits, LieBasisCloses) {
    for (const auto& name : model_names()) {
        SpinOrbitModel m = make_model(name);
        Mat span = span_basis(m.lie_basis);
        for (const auto& x : m.lie_basis)
            for (const auto& y : m.lie_basis)
                EXPECT_LE(residual_from_span(span, flatten(commutator(x, y))), 1e-10) << name;
    }
}

TEST(Orbits, InvariantsAndVectorFormPreserved) {
    Rng rng(21);
    for (const auto& name : model_names()) {
        SpinOrbitModel m = make_model(name);
        for (int t = 0; t < 200; ++t) {
            GroupElement g = sample_group(m, rng);
            EXPECT_LE(m.membership_residual(g.a), 1e-10 * std::max(1.0, g.a.squaredNorm())) << name;
            Vec s = sample_spinor(m, rng);
            Vec gs = act_spinor(m, g, s);
            InvariantRecord a = orbit_invariant(m, s), b = orbit_invariant(m, gs);
            ASSERT_EQ(a.values.size(), b.values.size());
            for (size_t k = 0; k < a.values.size(); ++k)
                EXPECT_NEAR(a.values[k].second, b.values[k].second, 1e-12 * scale_of(s) * g.spinor.squaredNorm())
                    << name << " " << a.values[k].first;
            EXPECT_EQ(a.chirality, b.chirality) << name;
            Vec v = rng.normal_vec(m.vector_dim);
            Vec gv = act_vector(m, g, v);
            EXPECT_NEAR(m.vector_quadratic(v), m.vector_quadratic(gv), 1e-12 * scale_of(v) * g.vector.squaredNorm())
                << name;
        }
    }
}

TEST(Orbits, SquaringIsEquivariantAndNull) {
    Rng rng(22);
    int with_square = 0;
    for (const auto& name : model_names()) {
        SpinOrbitModel m = make_model(name);
        if (!m.has_square()) continue;
        ++with_square;
        for (int t = 0; t < 200; ++t) {
            GroupElement g = sample_group(m, rng);
            Vec s = sample_spinor(m, rng);
            if (name == "SPIN51") s.tail(8).setZero();
            Vec lhs = square_spinor(m, act_spinor(m, g, s));
            Vec rhs = act_vector(m, g, square_spinor(m, s));
            EXPECT_LE((lhs - rhs).norm(), 1e-10 * scale_of(s) * g.a.squaredNorm() * g.a.squaredNorm()) << name;
            double len = m.vector_quadratic(square_spinor(m, s));
            double tol = 1e-12 * scale_of(s) * scale_of(s);
            if (name == "SPIN5") {
                EXPECT_NEAR(len, 0.25 * std::pow(s.squaredNorm(), 2), tol);
            } else if (name == "SPIN41") {
                double nu = orbit_invariant(m, s).get("nu");
                EXPECT_NEAR(-len, 0.25 * nu * nu, tol);
            } else {
                EXPECT_LE(std::abs(len), tol) << name;
            }
        }
    }
    // SPIN21, SPIN31, SPIN22, SPIN5, SPIN41, SPIN51
    EXPECT_EQ(with_square, 6);
}

TEST(Orbits, OrbitPlusStabilizerIsGroup) {
    Rng rng(23);
    for (const auto& name : model_names()) {
        SpinOrbitModel m = make_model(name);
        for (int t = 0; t < 20; ++t) {
            Vec s = sample_spinor(m, rng);
            OrbitReport r = orbit_report(m, s);
            EXPECT_EQ(r.orbit_dim + r.stabilizer_dim, m.group_dim()) << name;
            EXPECT_GE(r.orbit_dim, 1) << name;
        }
    }
    SpinOrbitModel m = make_model("SPIN3");
    EXPECT_THROW(orbit_dimension(m, Vec::Zero(4)), std::invalid_argument);
}

TEST(Orbits, NamedStabilizers) {
    SpinOrbitModel m41 = make_model("SPIN41");
    Vec s(8);
    s.setZero();
    s(0) = 1;
    s(4) = 1;
    EXPECT_EQ(stabilizer_dimension(m41, s), 3);
    EXPECT_NEAR(orbit_invariant(m41, s).get("nu"), 0.0, 1e-15);
    EXPECT_NEAR(m41.vector_quadratic(square_spinor(m41, s)), 0.0, 1e-12);

    SpinOrbitModel m51 = make_model("SPIN51");
    for (double r : {1.0, 0.5, 2.0}) {
        Vec sr = Vec::Zero(16);
        sr(4) = 1;      // s+ = (0, 1)
        sr(8) = r;      // s- = (r, 0)
        EXPECT_EQ(stabilizer_dimension(m51, sr), 4) << r;
        EXPECT_EQ(orbit_dimension(m51, sr), 11) << r;
    }
    Rng rng(24);
    EXPECT_EQ(stabilizer_dimension(m51, sample_spinor(m51, rng)), 3);

    SpinOrbitModel m33 = make_model("SPIN33");
    EXPECT_EQ(stabilizer_dimension(m33, sample_spinor(m33, rng)), 8);

    SpinOrbitModel m32 = make_model("SPIN32");
    EXPECT_EQ(orbit_dimension(m32, sample_spinor(m32, rng)), 4);
}

TEST(Orbits, Spin51StabilizerIsLowerTriangular) {
    SpinOrbitModel m = make_model("SPIN51");
    Vec sr = Vec::Zero(16);
    sr(4) = 1;
    sr(8) = 1;
    Mat cols = linearized_action(m, sr);
    Mat ker = kernel_basis(cols);
    ASSERT_EQ(ker.cols(), 4);
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
        Mat x = Mat::Zero(8, 8);
        for (int i = 0; i < m.group_dim(); ++i) x += ker(i, k) * m.lie_basis[static_cast<size_t>(i)];
        EXPECT_LT(x.block(0, 4, 4, 4).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT(x.topLeftCorner(4, 4).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT(x.bottomRightCorner(4, 4).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Orbits, PurityAndChiralSwap) {
    Rng rng(25);
    SpinOrbitModel m21 = make_model("SPIN21");
    EXPECT_TRUE(is_pure(m21, sample_spinor(m21, rng)));
    SpinOrbitModel m32 = make_model("SPIN32");
    EXPECT_TRUE(is_pure(m32, sample_spinor(m32, rng)));
    EXPECT_THROW(is_pure(m32, Vec::Zero(4)), std::invalid_argument);
    for (const char* name : {"SPIN11", "SPIN22", "SPIN33"}) {
        SpinOrbitModel m = make_model(name);
        Vec s = sample_spinor(m, rng);
        EXPECT_FALSE(is_pure(m, s)) << name;
        Vec c = s;
        c.tail(s.size() / 2).setZero();
        EXPECT_TRUE(is_pure(m, c)) << name;
        EXPECT_EQ(orbit_invariant(m, c).chirality, "chiral+");
        Vec w = swap_chirality(m, c);
        EXPECT_EQ(orbit_invariant(m, w).chirality, "chiral-");
        EXPECT_TRUE(is_pure(m, w)) << name;
        EXPECT_LT((swap_chirality(m, w) - c).norm(), 1e-15);
    }
    EXPECT_THROW(swap_chirality(make_model("SPIN5"), Vec::Zero(8)), std::invalid_argument);
    EXPECT_THROW(is_pure(make_model("SPIN5"), Vec::Ones(8)), std::invalid_argument);
}

TEST(Orbits, Spin33PureChiralStabilizer) {
    SpinOrbitModel m = make_model("SPIN33");
    Vec s = Vec::Zero(8);
    s(0) = 1;
    // Traceless matrices with vanishing first column.
    EXPECT_EQ(stabilizer_dimension(m, s), 11);
    EXPECT_EQ(orbit_dimension(m, s), 4);
}

TEST(Orbits, CliffordBuiltModels) {
    SpinOrbitModel m43 = clifford_orbit_model(4, 3);
    EXPECT_EQ(m43.group_dim(), 21);
    EXPECT_EQ(m43.spinor_dim, 8);
    auto [pos, neg] = signature(m43.spinor_form);
    EXPECT_EQ(pos + neg, 8);
    EXPECT_EQ(std::min(pos, neg), 4);
    Rng rng(26);
    for (int t = 0; t < 50; ++t) {
        GroupElement g = sample_group(m43, rng, 0.3);
        Vec s = sample_spinor(m43, rng);
        Vec gs = act_spinor(m43, g, s);
        EXPECT_NEAR(orbit_invariant(m43, s).get("quadratic"), orbit_invariant(m43, gs).get("quadratic"),
                    1e-9 * scale_of(s) * g.spinor.squaredNorm());
        Vec v = rng.normal_vec(7);
        EXPECT_NEAR(m43.vector_quadratic(v), m43.vector_quadratic(act_vector(m43, g, v)),
                    1e-9 * scale_of(v) * g.vector.squaredNorm());
    }
    // Null spinor: s = u + w with Q(u) = -Q(w).
    Eigen::SelfAdjointEigenSolver<Mat> es(m43.spinor_form);
    Vec a = es.eigenvectors().col(0), b = es.eigenvectors().col(7);
    double la = es.eigenvalues()(0), lb = es.eigenvalues()(7);
    Vec null = std::sqrt(lb) * a + std::sqrt(-la) * b;
    EXPECT_NEAR(null.dot(m43.spinor_form * null), 0.0, 1e-12);
    EXPECT_TRUE(is_pure(m43, null));
    EXPECT_EQ(orbit_dimension(m43, null), 7);
    EXPECT_EQ(stabilizer_dimension(m43, null), 14);
    EXPECT_FALSE(is_pure(m43, a));
    EXPECT_EQ(orbit_dimension(m43, a), 7);

    SpinOrbitModel m44 = clifford_orbit_model(4, 4);
    EXPECT_EQ(m44.group_dim(), 28);
    EXPECT_EQ(m44.spinor_dim, 16);
    Mat plus = m44.chirality_projector_plus;
    Mat up = range_basis(plus);
    ASSERT_EQ(up.cols(), 8);
    Mat fp = up.transpose() * m44.spinor_form * up;
    Eigen::SelfAdjointEigenSolver<Mat> ep(fp);
    Vec pa = up * ep.eigenvectors().col(0), pb = up * ep.eigenvectors().col(7);
    Vec pn = std::sqrt(ep.eigenvalues()(7)) * pa + std::sqrt(-ep.eigenvalues()(0)) * pb;
    EXPECT_EQ(orbit_invariant(m44, pn).chirality, "chiral+");
    EXPECT_TRUE(is_pure(m44, pn));
    EXPECT_EQ(orbit_dimension(m44, pn), 7);
    Vec mixed = sample_spinor(m44, rng);
    EXPECT_FALSE(is_pure(m44, mixed));
}

TEST(Orbits, ModelExamples) {
    SpinOrbitModel m31 = make_model("SPIN31");
    Vec e = Vec::Zero(4);
    e(0) = 1;
    Vec sq = square_spinor(m31, e);
    EXPECT_NEAR(m31.vector_quadratic(sq), 0.0, 1e-15);

    SpinOrbitModel m22 = make_model("SPIN22");
    Rng rng(27);
    Vec s = sample_spinor(m22, rng);
    Vec coeffs = Vec::Zero(6);
    for (int k = 0; k < 6; k += 2) coeffs(k) = 0.4;  // even indices act on s+
    GroupElement ga = group_element(m22, coeffs);
    Vec gs = act_spinor(m22, ga, s);
    EXPECT_GT((gs.head(2) - s.head(2)).norm(), 1e-3);
    EXPECT_LT((gs.tail(2) - s.tail(2)).norm(), 1e-15);
    EXPECT_LT((act_spinor(m22, group_element(m22, Vec::Zero(6)), s) - s).norm(), 1e-15);
    for (int t = 0; t < 20; ++t)
        EXPECT_NEAR(m22.vector_quadratic(square_spinor(m22, sample_spinor(m22, rng))), 0.0, 1e-12);

    SpinOrbitModel m33 = make_model("SPIN33");
    Vec sp = Vec::Zero(8);
    sp << 1, 2, 0, 0, 0.5, 0.25, 0, 0;
    EXPECT_DOUBLE_EQ(orbit_invariant(m33, sp).get("pairing"), 1.0);
    EXPECT_EQ(orbit_report(m33, sp).orbit_dim, 7);

    SpinOrbitModel m6 = make_model("SPIN6");
    Vec s6 = sample_spinor(m6, rng);
    for (int t = 0; t < 100; ++t) {
        Vec h = act_spinor(m6, sample_group(m6, rng), s6);
        EXPECT_NEAR(h.squaredNorm(), s6.squaredNorm(), 1e-12 * s6.squaredNorm());
    }

    SpinOrbitModel m41 = make_model("SPIN41");
    GroupElement bad{Mat::Identity(8, 8) * 2.0, Mat::Identity(8, 8) * 2.0, Mat::Identity(5, 5)};
    EXPECT_THROW(act_spinor(m41, bad, sample_spinor(m41, rng)), std::invalid_argument);
    EXPECT_THROW(square_spinor(make_model("SPIN32"), Vec::Ones(4)), std::invalid_argument);
}
