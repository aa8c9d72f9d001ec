#include "spinlab/octo_spin.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace spinlab {

namespace {

const Mat& conj_c() {
    static const Mat c = oct_conj_matrix();
    return c;
}

std::vector<Mat> so8_basis() {
    std::vector<Mat> out;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            Mat m = Mat::Zero(8, 8);
            m(i, j) = 1;
            m(j, i) = -1;
            out.push_back(m);
        }
    return out;
}

Vec e(int i) { return Vec::Unit(8, i); }

Vec omul(const Vec& a, const Vec& b) { return octonion_mul(Octonion::from_vec(a), Octonion::from_vec(b)).vec(); }

double orth_defect(const Mat& g) { return (g.transpose() * g - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(); }

}  // namespace

Mat clifford_map_mx(const Octonion& x) {
    Mat m = Mat::Zero(16, 16);
    m.block(0, 8, 8, 8) = conj_c() * oct_right(x);
    m.block(8, 0, 8, 8) = -conj_c() * oct_left(x);
    return m;
}

double triple_residual(const TrialityTriple& t) {
    double r = std::max({orth_defect(t.g1), orth_defect(t.g2), orth_defect(t.g3)});
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Vec lhs = t.g2 * omul(e(i), e(j));
            Vec rhs = omul(t.g1 * e(i), t.g3 * e(j));
            r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    return r;
}

TrialityTriple sigma_triple(const Octonion& u) {
    if (std::abs(u.norm() - 1.0) > 1e-12) throw std::invalid_argument("sigma_triple needs a unit octonion");
    Mat l = oct_left(u), r = oct_right(u);
    return {l, l * r, r};
}

TrialityTriple compose(const TrialityTriple& a, const TrialityTriple& b) {
    return {a.g1 * b.g1, a.g2 * b.g2, a.g3 * b.g3};
}

TrialityTriple random_triple(Rng& rng, int factors) {
    TrialityTriple t{Mat::Identity(8, 8), Mat::Identity(8, 8), Mat::Identity(8, 8)};
    for (int k = 0; k < factors; ++k) {
        Octonion u = random_octonion(rng);
        t = compose(t, sigma_triple(u * (1.0 / u.norm())));
    }
    return t;
}

TrialityTriple triality_apply(const TrialityTriple& t, TrialityMap which) {
    if (triple_residual(t) > 1e-8) throw std::invalid_argument("input is not a triality triple");
    const Mat& c = conj_c();
    switch (which) {
        case TrialityMap::Alpha:
            return {c * t.g3 * c, c * t.g2 * c, c * t.g1 * c};
        case TrialityMap::Beta:
            return {t.g2, t.g1, c * t.g3 * c};
        case TrialityMap::Tau:
            return {t.g3, c * t.g1 * c, c * t.g2 * c};
    }
    throw std::invalid_argument("unknown triality map");
}

double spin8_residual(const Spin8Element& a) {
    double r = 0;
    for (const auto& m : a) r = std::max(r, (m + m.transpose()).cwiseAbs().maxCoeff());
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Vec lhs = a[1] * omul(e(i), e(j));
            Vec rhs = omul(a[0] * e(i), e(j)) + omul(e(i), a[2] * e(j));
            r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    return r;
}

Mat derive_a2(const Mat& a1, const Mat& a3, double tol) {
    Mat u(8, 64), rhs(8, 64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            u.col(8 * i + j) = omul(e(i), e(j));
            rhs.col(8 * i + j) = omul(a1 * e(i), e(j)) + omul(e(i), a3 * e(j));
        }
    // a2 u = rhs, solved column-wise in the least-squares sense.
    Mat a2 = u.transpose().colPivHouseholderQr().solve(rhs.transpose()).transpose();
    double scale = std::max({1.0, a1.cwiseAbs().maxCoeff(), a3.cwiseAbs().maxCoeff()});
    if (spin8_residual({a1, a2, a3}) > tol * scale) throw std::invalid_argument("incompatible (a1, a3) pair");
    return a2;
}

const std::vector<Spin8Element>& spin8_basis() {
    static const std::vector<Spin8Element> basis = [] {
        std::vector<Mat> sk = so8_basis();
        Mat a(512, 84);
        for (int k = 0; k < 28; ++k)
            for (int blk = 0; blk < 3; ++blk) {
                Spin8Element t{Mat::Zero(8, 8), Mat::Zero(8, 8), Mat::Zero(8, 8)};
                t[static_cast<size_t>(blk)] = sk[static_cast<size_t>(k)];
                Vec col(512);
                for (int i = 0; i < 8; ++i)
                    for (int j = 0; j < 8; ++j)
                        col.segment(8 * (8 * i + j), 8) =
                            t[1] * omul(e(i), e(j)) - omul(t[0] * e(i), e(j)) - omul(e(i), t[2] * e(j));
                a.col(blk * 28 + k) = col;
            }
        Mat ker = kernel_basis(a);
        if (ker.cols() != 28) throw std::runtime_error("triple algebra is not 28-dimensional");
        std::vector<Spin8Element> out;
        for (int c = 0; c < 28; ++c) {
            Spin8Element t{Mat::Zero(8, 8), Mat::Zero(8, 8), Mat::Zero(8, 8)};
            for (int blk = 0; blk < 3; ++blk)
                for (int k = 0; k < 28; ++k) t[static_cast<size_t>(blk)] += ker(blk * 28 + k, c) * sk[static_cast<size_t>(k)];
            out.push_back(t);
        }
        return out;
    }();
    return basis;
}

std::vector<Spin8Element> k1_basis() {
    const auto& b = spin8_basis();
    Mat a(8, 28);
    for (int k = 0; k < 28; ++k) a.col(k) = b[static_cast<size_t>(k)][0] * e(0);
    Mat ker = kernel_basis(a);
    std::vector<Spin8Element> out;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        Spin8Element t{Mat::Zero(8, 8), Mat::Zero(8, 8), Mat::Zero(8, 8)};
        for (int k = 0; k < 28; ++k)
            for (int blk = 0; blk < 3; ++blk) t[static_cast<size_t>(blk)] += ker(k, c) * b[static_cast<size_t>(k)][static_cast<size_t>(blk)];
        out.push_back(t);
    }
    return out;
}

int projection_rank(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("projection index is 1, 2 or 3");
    const auto& b = spin8_basis();
    Mat a(64, 28);
    for (int k = 0; k < 28; ++k) a.col(k) = flatten(b[static_cast<size_t>(k)][static_cast<size_t>(i - 1)]);
    return guarded_rank(a);
}

Spin101Element spin101_element(const Spin101Params& p) {
    Spin101Element el;
    el.params = p;
    el.a2 = derive_a2(p.a1, p.a3);
    const Mat& c = conj_c();
    const Mat id = Mat::Identity(8, 8);
    Mat m = Mat::Zero(32, 32);
    m.block(0, 0, 8, 8) = p.a1 + p.x * id;
    m.block(0, 8, 8, 8) = c * oct_right(p.bx);
    m.block(0, 16, 8, 8) = p.y * id;
    m.block(0, 24, 8, 8) = c * oct_right(p.by);
    m.block(8, 0, 8, 8) = -c * oct_left(p.bx);
    m.block(8, 8, 8, 8) = p.a3 + p.x * id;
    m.block(8, 16, 8, 8) = c * oct_left(p.by);
    m.block(8, 24, 8, 8) = -p.y * id;
    m.block(16, 0, 8, 8) = p.z * id;
    m.block(16, 8, 8, 8) = c * oct_right(p.bz);
    m.block(16, 16, 8, 8) = p.a1 - p.x * id;
    m.block(16, 24, 8, 8) = c * oct_right(p.bx);
    m.block(24, 0, 8, 8) = c * oct_left(p.bz);
    m.block(24, 8, 8, 8) = -p.z * id;
    m.block(24, 16, 8, 8) = -c * oct_left(p.bx);
    m.block(24, 24, 8, 8) = p.a3 - p.x * id;
    el.matrix = m;
    return el;
}

Spin101Params params_from_coeffs(const Vec& c) {
    if (c.size() != 55) throw std::invalid_argument("spin(10,1) coordinates have length 55");
    Spin101Params p;
    const auto& b = spin8_basis();
    for (int k = 0; k < 28; ++k) {
        p.a1 += c(k) * b[static_cast<size_t>(k)][0];
        p.a3 += c(k) * b[static_cast<size_t>(k)][2];
    }
    p.x = c(28);
    p.y = c(29);
    p.z = c(30);
    p.bx = Octonion::from_vec(c, 31);
    p.by = Octonion::from_vec(c, 39);
    p.bz = Octonion::from_vec(c, 47);
    return p;
}

const std::vector<Mat>& spin101_basis() {
    static const std::vector<Mat> basis = [] {
        std::vector<Mat> out;
        for (int k = 0; k < 55; ++k) out.push_back(spin101_element(params_from_coeffs(Vec::Unit(55, k))).matrix);
        return out;
    }();
    return basis;
}

Vec coeffs_from_matrix(const Mat& m, double* residual) {
    static const Mat a = [] {
        Mat r(1024, 55);
        for (int k = 0; k < 55; ++k) r.col(k) = flatten(spin101_basis()[static_cast<size_t>(k)]);
        return r;
    }();
    static const Eigen::ColPivHouseholderQR<Mat> qr(a);
    Vec f = flatten(m);
    Vec c = qr.solve(f);
    if (residual) *residual = (a * c - f).norm() / std::max(1.0, f.norm());
    return c;
}

Spin101Params random_spin101(Rng& rng, double scale) { return params_from_coeffs(scale * rng.normal_vec(55)); }

Mat rho_prime(const Spin101Element& m) {
    const Spin101Params& p = m.params;
    Mat r = Mat::Zero(11, 11);
    r(0, 0) = 2 * p.x;
    r(0, 1) = p.y;
    r.block(0, 3, 1, 8) = p.by.conj().vec().transpose();
    r(1, 0) = 2 * p.z;
    r(1, 2) = 2 * p.y;
    r.block(1, 3, 1, 8) = 2 * p.bx.conj().vec().transpose();
    r(2, 1) = p.z;
    r(2, 2) = -2 * p.x;
    r.block(2, 3, 1, 8) = p.bz.conj().vec().transpose();
    r.block(3, 0, 8, 1) = 2 * p.bz.conj().vec();
    r.block(3, 1, 8, 1) = -2 * p.bx.conj().vec();
    r.block(3, 2, 8, 1) = 2 * p.by.conj().vec();
    r.block(3, 3, 8, 8) = m.a2;
    return r;
}

Mat gram101() {
    Mat g = Mat::Zero(11, 11);
    g(0, 2) = g(2, 0) = -2;
    g(1, 1) = 1;
    g.block(3, 3, 8, 8) = Mat::Identity(8, 8);
    return g;
}

double inner101(const Vec& a, const Vec& b) {
    return -2 * (a(0) * b(2) + a(2) * b(0)) + a(1) * b(1) + a.tail(8).dot(b.tail(8));
}

Vec sigma_10_1(const Vec& z) {
    if (z.size() != 32) throw std::invalid_argument("spinor in O^4 has 32 components");
    Octonion x1 = Octonion::from_vec(z, 0), y1 = Octonion::from_vec(z, 8);
    Octonion x2 = Octonion::from_vec(z, 16), y2 = Octonion::from_vec(z, 24);
    Vec s(11);
    s(0) = x1.norm2() + y1.norm2();
    s(1) = 2 * (x1.dot(x2) - y1.dot(y2));
    s(2) = x2.norm2() + y2.norm2();
    s.tail(8) = ((x1 * y2 + x2 * y1) * 2.0).vec();
    return s;
}

double p_invariant(const Vec& z) {
    Octonion x1 = Octonion::from_vec(z, 0), y1 = Octonion::from_vec(z, 8);
    Octonion x2 = Octonion::from_vec(z, 16), y2 = Octonion::from_vec(z, 24);
    double c = x1.dot(x2) + y1.dot(y2);
    return x1.norm2() * x2.norm2() + y1.norm2() * y2.norm2() - c * c + 2 * (x1 * y1).dot(x2 * y2);
}

Vec null_spinor_z0() { return Vec::Unit(32, 0); }

std::vector<Mat> null_stabilizer_template() {
    std::vector<Mat> out;
    for (const auto& a : k1_basis()) {
        Spin101Params p;
        p.a1 = a[0];
        p.a3 = a[2];
        out.push_back(spin101_element(p).matrix);
    }
    Spin101Params py;
    py.y = 1;
    out.push_back(spin101_element(py).matrix);
    for (int i = 0; i < 8; ++i) {
        Spin101Params p;
        p.by = Octonion::unit(i);
        out.push_back(spin101_element(p).matrix);
    }
    return out;
}

int stabilizer_dim_101(const Vec& z, const RankOptions& opt) {
    if (z.norm() == 0.0) throw std::invalid_argument("stabilizer of the zero spinor");
    const auto& b = spin101_basis();
    Mat cols(32, 55);
    for (int k = 0; k < 55; ++k) cols.col(k) = b[static_cast<size_t>(k)] * z;
    return 55 - guarded_rank(cols, opt);
}

int null_stabilizer_dim() {
    Vec z0 = null_spinor_z0();
    auto h = null_stabilizer_template();
    for (const auto& m : h)
        if ((m * z0).norm() > 1e-12) throw std::runtime_error("displayed stabilizer does not annihilate z0");
    if (static_cast<int>(span_basis(h).cols()) != 30) throw std::runtime_error("displayed stabilizer is not 30-dimensional");
    return stabilizer_dim_101(z0);
}

}  // namespace spinlab
