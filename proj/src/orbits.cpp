#include "spinlab/orbits.hpp"

#include "spinlab/clifford.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <tuple>
#include <stdexcept>

namespace spinlab {

double InvariantRecord::get(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    throw std::out_of_range("no invariant named " + name);
}

Mat complex_real_form(const Eigen::MatrixXcd& a) {
    Mat r(2 * a.rows(), 2 * a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            double x = a(i, j).real(), y = a(i, j).imag();
            r(2 * i, 2 * j) = x;
            r(2 * i, 2 * j + 1) = -y;
            r(2 * i + 1, 2 * j) = y;
            r(2 * i + 1, 2 * j + 1) = x;
        }
    return r;
}

Eigen::MatrixXcd complex_from_real_form(const Mat& a) {
    Eigen::MatrixXcd c(a.rows() / 2, a.cols() / 2);
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = cplx(a(2 * i, 2 * j), a(2 * i + 1, 2 * j));
    return c;
}

namespace {

const Quaternion kUnits[4] = {Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)};

double rel(double r, const Mat& a) { return r / std::max(1.0, a.squaredNorm()); }

// Orthonormalized real vector space of matrices.
struct MatrixSpace {
    Mat q;
    int rows = 0, cols = 0;
    explicit MatrixSpace(const std::vector<Mat>& raw) {
        rows = static_cast<int>(raw[0].rows());
        cols = static_cast<int>(raw[0].cols());
        q = span_basis(raw);
    }
    int dim() const { return static_cast<int>(q.cols()); }
    Vec coords(const Mat& m) const {
        Vec f = flatten(m);
        Vec c = q.transpose() * f;
        if ((q * c - f).norm() > 1e-8 * std::max(1.0, f.norm())) throw std::runtime_error("matrix outside vector space");
        return c;
    }
    Mat matrix(const Vec& v) const { return unflatten(q * v, rows, cols); }
};

Mat action_matrix(const MatrixSpace& sp, const std::function<Mat(const Mat&)>& act) {
    Mat r(sp.dim(), sp.dim());
    for (int k = 0; k < sp.dim(); ++k) r.col(k) = sp.coords(act(sp.matrix(Vec::Unit(sp.dim(), k))));
    return r;
}

std::vector<Mat> real_ambient(int n) {
    std::vector<Mat> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat m = Mat::Zero(n, n);
            m(i, j) = 1;
            out.push_back(m);
        }
    return out;
}

std::vector<Mat> complex_ambient(int n) {
    std::vector<Mat> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (cplx u : {cplx(1, 0), cplx(0, 1)}) {
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                m(i, j) = u;
                out.push_back(complex_real_form(m));
            }
    return out;
}

Mat quat_entry(int n, int i, int j, const Quaternion& u) {
    RingMatrix m(Ring::H, n, n);
    m.set(i, j, u);
    return m.real_form();
}

std::vector<Mat> quat_ambient(int n) {
    std::vector<Mat> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& u : kUnits) out.push_back(quat_entry(n, i, j, u));
    return out;
}

// Deviation from complex linearity of a real-form matrix.
double complex_defect(const Mat& a) {
    const int n = static_cast<int>(a.rows()) / 2;
    Mat j = complex_real_form(Eigen::MatrixXcd::Identity(n, n) * cplx(0, 1));
    return (a * j - j * a).cwiseAbs().maxCoeff();
}

// Deviation from right quaternion linearity of a real-form matrix.
double quat_defect(const Mat& a) {
    const int n = static_cast<int>(a.rows()) / 4;
    double d = 0;
    for (int u = 1; u < 3; ++u) {
        Mat r = Mat::Zero(4 * n, 4 * n);
        for (int k = 0; k < n; ++k) r.block(4 * k, 4 * k, 4, 4) = quat_right(kUnits[u]);
        d = std::max(d, (a * r - r * a).cwiseAbs().maxCoeff());
    }
    return d;
}

Mat real_qmatrix(int n, const std::vector<std::tuple<int, int, Quaternion>>& entries) {
    RingMatrix m(Ring::H, n, n);
    for (const auto& [i, j, v] : entries) m.set(i, j, v);
    return m.real_form();
}

Mat quat_column(const Vec& s) {
    RingMatrix c(Ring::H, static_cast<int>(s.size()) / 4, 1);
    for (int i = 0; i < c.rows(); ++i) c.set(i, 0, Quaternion::from_vec(s, 4 * i));
    return c.real_form();
}

Mat complex_column(const Vec& s) {
    RingMatrix c(Ring::C, static_cast<int>(s.size()) / 2, 1);
    for (int i = 0; i < c.rows(); ++i) c.set(i, 0, Quaternion(s(2 * i), s(2 * i + 1)));
    return c.real_form();
}

double qdet_real_form(const Mat& m) { return qdet2(RingMatrix::from_real_form(Ring::H, m), 1e-8); }

double cdet_real_form(const Mat& m) { return complex_from_real_form(m).determinant().real(); }

std::string chirality_label(const Vec& s) {
    const Eigen::Index h = s.size() / 2;
    double np = s.head(h).norm(), nm = s.tail(h).norm();
    double scale = std::max(1.0, s.norm());
    bool zp = np <= 1e-12 * scale, zm = nm <= 1e-12 * scale;
    if (zp && zm) return "zero";
    if (zm) return "chiral+";
    if (zp) return "chiral-";
    return "mixed";
}

InvariantRecord no_invariants(const Vec&) { return {}; }

// Finish a model whose group acts linearly by its defining matrix on spinors
// and on a matrix space of vectors by act(a, M).
void attach_vectors(SpinOrbitModel& m, const std::vector<Mat>& raw, std::function<Mat(const Mat&, const Mat&)> act,
                    std::function<double(const Mat&)> quad) {
    auto sp = std::make_shared<MatrixSpace>(raw);
    m.vector_dim = sp->dim();
    m.vector_matrix = [sp, act](const Mat& a) { return action_matrix(*sp, [&](const Mat& v) { return act(a, v); }); };
    m.vector_quadratic = [sp, quad](const Vec& v) { return quad(sp->matrix(v)); };
    auto prev = m.square;
    if (prev) {
        m.square = [sp, prev](const Vec& s) -> std::optional<Vec> {
            auto r = prev(s);
            if (!r) return std::nullopt;
            // prev returns the flattened ambient matrix.
            return sp->coords(unflatten(*r, sp->rows, sp->cols));
        };
    }
}

Mat conj_act(const Mat& a, const Mat& v) { return a * v * a.transpose(); }

SpinOrbitModel base(const std::string& name, int p, int q, int sdim, Ring ring) {
    SpinOrbitModel m;
    m.name = name;
    m.p = p;
    m.q = q;
    m.spinor_dim = sdim;
    m.spinor_ring = ring;
    m.spinor_derivative = [](const Mat& x) { return x; };
    m.spinor_matrix = [](const Mat& a) { return a; };
    m.invariants = no_invariants;
    return m;
}

Mat sl2_e(int k) {
    Mat m = Mat::Zero(2, 2);
    if (k == 0) {
        m(0, 0) = 1;
        m(1, 1) = -1;
    } else if (k == 1) {
        m(0, 1) = 1;
    } else {
        m(1, 0) = 1;
    }
    return m;
}

// Complex skew 4x4 vectors split by the real structure c(w) = B^{-T} H^T conj(w),
// where B polarizes the Pfaffian and H(w, v) = 1/4 tr(w^* Q v Q).
std::vector<Mat> w_plus_basis(const Eigen::MatrixXcd& qform) {
    std::vector<Eigen::MatrixXcd> e;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
            m(i, j) = 1;
            m(j, i) = -1;
            e.push_back(m);
        }
    Eigen::MatrixXcd B(6, 6), H(6, 6);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const auto& wa = e[static_cast<size_t>(a)];
            const auto& wb = e[static_cast<size_t>(b)];
            B(a, b) = 0.5 * (pfaffian_complex(wa + wb) - pfaffian_complex(wa) - pfaffian_complex(wb));
            H(a, b) = 0.25 * (wa.adjoint() * qform * wb * qform).trace();
        }
    Eigen::MatrixXcd C = B.transpose().inverse() * H.transpose();
    // c(w) = C conj(w); c^2 = C conj(C).
    Eigen::MatrixXcd c2 = C * C.conjugate();
    cplx lam = c2(0, 0);
    if ((c2 - lam * Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() > 1e-10 || lam.real() <= 0)
        throw std::runtime_error("W splitting: c^2 is not a positive scalar");
    C /= std::sqrt(lam.real());
    // Real 12x12 matrix of c on (Re w, Im w).
    Mat R(12, 12);
    R.topLeftCorner(6, 6) = C.real();
    R.topRightCorner(6, 6) = C.imag();
    R.bottomLeftCorner(6, 6) = C.imag();
    R.bottomRightCorner(6, 6) = -C.real();
    Mat fix = kernel_basis(R - Mat::Identity(12, 12));
    if (fix.cols() != 6) throw std::runtime_error("W splitting: fixed space is not 6-dimensional");
    std::vector<Mat> out;
    for (int k = 0; k < 6; ++k) {
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(4, 4);
        for (int a = 0; a < 6; ++a) w += cplx(fix(a, k), fix(6 + a, k)) * e[static_cast<size_t>(a)];
        out.push_back(complex_real_form(w));
    }
    return out;
}

Mat complex_congruence(const Mat& a, const Mat& v) {
    Eigen::MatrixXcd A = complex_from_real_form(a);
    return complex_real_form(A * complex_from_real_form(v) * A.transpose());
}

double pf_real_part(const Mat& v) { return pfaffian_complex(complex_from_real_form(v), 1e-8).real(); }

SpinOrbitModel make_spin2() {
    SpinOrbitModel m = base("SPIN2", 2, 0, 2, Ring::C);
    m.lie_basis = {complex_real_form(Eigen::MatrixXcd::Identity(1, 1) * cplx(0, 1))};
    m.membership_residual = [](const Mat& a) {
        return std::max((a.transpose() * a - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), complex_defect(a));
    };
    m.vector_dim = 2;
    m.vector_matrix = [](const Mat& a) { return Mat(a * a); };
    m.vector_quadratic = [](const Vec& v) { return v.squaredNorm(); };
    m.invariants = [](const Vec& s) { return InvariantRecord{{{"norm2", s.squaredNorm()}}, ""}; };
    return m;
}

SpinOrbitModel make_spin11() {
    SpinOrbitModel m = base("SPIN11", 1, 1, 2, Ring::R);
    m.split_chiral = true;
    m.lie_basis = {sl2_e(0)};
    m.membership_residual = [](const Mat& a) {
        return std::max({std::abs(a(0, 1)), std::abs(a(1, 0)), std::abs(a.determinant() - 1.0),
                         a(0, 0) > 0 ? 0.0 : 1.0});
    };
    m.vector_dim = 2;
    m.vector_matrix = [](const Mat& a) { return Mat(a * a); };
    m.vector_quadratic = [](const Vec& v) { return v(0) * v(1); };
    m.invariants = [](const Vec& s) { return InvariantRecord{{{"product", s(0) * s(1)}}, chirality_label(s)}; };
    return m;
}

SpinOrbitModel make_spin3() {
    SpinOrbitModel m = base("SPIN3", 3, 0, 4, Ring::H);
    for (int u = 1; u < 4; ++u) m.lie_basis.push_back(quat_left(kUnits[u]));
    m.membership_residual = [](const Mat& a) {
        return std::max((a.transpose() * a - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), quat_defect(a));
    };
    std::vector<Mat> raw;
    for (int u = 1; u < 4; ++u) raw.push_back(quat_left(kUnits[u]));
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return 0.25 * v.squaredNorm(); });
    m.invariants = [](const Vec& s) { return InvariantRecord{{{"norm2", s.squaredNorm()}}, ""}; };
    return m;
}

SpinOrbitModel make_spin21() {
    SpinOrbitModel m = base("SPIN21", 2, 1, 2, Ring::R);
    for (int k = 0; k < 3; ++k) m.lie_basis.push_back(sl2_e(k));
    m.membership_residual = [](const Mat& a) { return std::abs(a.determinant() - 1.0); };
    Mat e11 = Mat::Zero(2, 2), e22 = Mat::Zero(2, 2), e12 = Mat::Zero(2, 2);
    e11(0, 0) = 1;
    e22(1, 1) = 1;
    e12(0, 1) = e12(1, 0) = 1;
    m.square = [](const Vec& s) -> std::optional<Vec> { return flatten(s * s.transpose()); };
    attach_vectors(m, {e11, e22, e12}, conj_act, [](const Mat& v) { return -v.determinant(); });
    return m;
}

SpinOrbitModel make_spin4() {
    SpinOrbitModel m = base("SPIN4", 4, 0, 8, Ring::H);
    m.split_chiral = true;
    for (int u = 1; u < 4; ++u) {
        Mat l = quat_left(kUnits[u]);
        m.lie_basis.push_back(block_diag({l, Mat::Zero(4, 4)}));
        m.lie_basis.push_back(block_diag({Mat::Zero(4, 4), l}));
    }
    m.membership_residual = [](const Mat& a) {
        double off = std::max(a.block(0, 4, 4, 4).cwiseAbs().maxCoeff(), a.block(4, 0, 4, 4).cwiseAbs().maxCoeff());
        return std::max({off, (a.transpose() * a - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(),
                         quat_defect(a.topLeftCorner(4, 4)), quat_defect(a.bottomRightCorner(4, 4))});
    };
    std::vector<Mat> raw;
    for (const auto& u : kUnits) {
        Mat v = Mat::Zero(8, 8);
        v.block(0, 4, 4, 4) = quat_left(u);
        v.block(4, 0, 4, 4) = quat_left(u).transpose();
        raw.push_back(v);
    }
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return v.block(0, 4, 4, 1).squaredNorm(); });
    m.invariants = [](const Vec& s) {
        return InvariantRecord{{{"norm2_plus", s.head(4).squaredNorm()}, {"norm2_minus", s.tail(4).squaredNorm()}},
                               chirality_label(s)};
    };
    return m;
}

SpinOrbitModel make_spin31() {
    SpinOrbitModel m = base("SPIN31", 3, 1, 4, Ring::C);
    m.lie_basis = constrained_basis(complex_ambient(2), [](const Mat& x) {
        cplx t = complex_from_real_form(x).trace();
        Vec r(2);
        r << t.real(), t.imag();
        return r;
    });
    m.membership_residual = [](const Mat& a) {
        return std::max(complex_defect(a), std::abs(complex_from_real_form(a).determinant() - cplx(1, 0)));
    };
    std::vector<Mat> raw;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = 1;
    raw.push_back(complex_real_form(h));
    h.setZero();
    h(1, 1) = 1;
    raw.push_back(complex_real_form(h));
    h.setZero();
    h(0, 1) = h(1, 0) = 1;
    raw.push_back(complex_real_form(h));
    h.setZero();
    h(0, 1) = cplx(0, 1);
    h(1, 0) = cplx(0, -1);
    raw.push_back(complex_real_form(h));
    m.square = [](const Vec& s) -> std::optional<Vec> {
        Mat c = complex_column(s);
        return flatten(c * c.transpose());
    };
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return -cdet_real_form(v); });
    return m;
}

SpinOrbitModel make_spin22() {
    SpinOrbitModel m = base("SPIN22", 2, 2, 4, Ring::R);
    m.split_chiral = true;
    for (int k = 0; k < 3; ++k) {
        m.lie_basis.push_back(block_diag({sl2_e(k), Mat::Zero(2, 2)}));
        m.lie_basis.push_back(block_diag({Mat::Zero(2, 2), sl2_e(k)}));
    }
    m.membership_residual = [](const Mat& a) {
        double off = std::max(a.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), a.block(2, 0, 2, 2).cwiseAbs().maxCoeff());
        return std::max({off, std::abs(a.topLeftCorner(2, 2).determinant() - 1.0),
                         std::abs(a.bottomRightCorner(2, 2).determinant() - 1.0)});
    };
    std::vector<Mat> raw;
    for (const auto& e : real_ambient(2)) {
        Mat v = Mat::Zero(4, 4);
        v.block(0, 2, 2, 2) = e;
        v.block(2, 0, 2, 2) = e.transpose();
        raw.push_back(v);
    }
    m.square = [](const Vec& s) -> std::optional<Vec> {
        Mat v = Mat::Zero(4, 4);
        Mat b = s.head(2) * s.tail(2).transpose();
        v.block(0, 2, 2, 2) = b;
        v.block(2, 0, 2, 2) = b.transpose();
        return flatten(v);
    };
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return Mat(v.block(0, 2, 2, 2)).determinant(); });
    m.invariants = [](const Vec& s) { return InvariantRecord{{}, chirality_label(s)}; };
    return m;
}

std::vector<Mat> quat_hermitian_offdiag() {
    std::vector<Mat> raw;
    for (const auto& u : kUnits) raw.push_back(real_qmatrix(2, {{0, 1, u}, {1, 0, u.conj()}}));
    return raw;
}

SpinOrbitModel make_spin5() {
    SpinOrbitModel m = base("SPIN5", 5, 0, 8, Ring::H);
    m.lie_basis = constrained_basis(quat_ambient(2), [](const Mat& x) { return flatten(x + x.transpose()); });
    m.membership_residual = [](const Mat& a) {
        return std::max((a.transpose() * a - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(), quat_defect(a));
    };
    std::vector<Mat> raw = quat_hermitian_offdiag();
    raw.push_back(real_qmatrix(2, {{0, 0, Quaternion(1)}, {1, 1, Quaternion(-1)}}));
    m.square = [](const Vec& s) -> std::optional<Vec> {
        Mat c = quat_column(s);
        return flatten(c * c.transpose() - 0.5 * s.squaredNorm() * Mat::Identity(8, 8));
    };
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return -qdet_real_form(v); });
    m.invariants = [](const Vec& s) { return InvariantRecord{{{"norm2", s.squaredNorm()}}, ""}; };
    return m;
}

Mat q_real(int blocksize, int n, const std::vector<double>& d) {
    Mat q = Mat::Zero(blocksize * n, blocksize * n);
    for (int i = 0; i < n; ++i) q.block(blocksize * i, blocksize * i, blocksize, blocksize) = d[static_cast<size_t>(i)] * Mat::Identity(blocksize, blocksize);
    return q;
}

SpinOrbitModel make_spin41() {
    SpinOrbitModel m = base("SPIN41", 4, 1, 8, Ring::H);
    const Mat Q = q_real(4, 2, {1, -1});
    m.lie_basis = constrained_basis(quat_ambient(2), [Q](const Mat& x) { return flatten(x.transpose() * Q + Q * x); });
    m.membership_residual = [Q](const Mat& a) {
        return std::max((a.transpose() * Q * a - Q).cwiseAbs().maxCoeff(), quat_defect(a));
    };
    std::vector<Mat> raw = quat_hermitian_offdiag();
    raw.push_back(real_qmatrix(2, {{0, 0, Quaternion(1)}, {1, 1, Quaternion(1)}}));
    auto nu = [](const Vec& s) { return s.head(4).squaredNorm() - s.tail(4).squaredNorm(); };
    m.square = [Q, nu](const Vec& s) -> std::optional<Vec> {
        Mat c = quat_column(s);
        return flatten(c * c.transpose() - 0.5 * nu(s) * Q);
    };
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return -qdet_real_form(v); });
    m.invariants = [nu](const Vec& s) { return InvariantRecord{{{"nu", nu(s)}}, ""}; };
    return m;
}

SpinOrbitModel make_spin32() {
    SpinOrbitModel m = base("SPIN32", 3, 2, 4, Ring::R);
    Mat J = Mat::Zero(4, 4);
    J.block(0, 2, 2, 2) = -Mat::Identity(2, 2);
    J.block(2, 0, 2, 2) = Mat::Identity(2, 2);
    m.lie_basis = constrained_basis(real_ambient(4), [J](const Mat& x) { return flatten(x.transpose() * J + J * x); });
    m.membership_residual = [J](const Mat& a) { return (a.transpose() * J * a - J).cwiseAbs().maxCoeff(); };
    std::vector<Mat> skew;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Mat v = Mat::Zero(4, 4);
            v(i, j) = 1;
            v(j, i) = -1;
            skew.push_back(v);
        }
    std::vector<Mat> raw = constrained_basis(skew, [J](const Mat& v) {
        Vec r(1);
        r(0) = (v * J).trace();
        return r;
    });
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return pfaffian(v, 1e-8); });
    return m;
}

std::vector<Mat> su_basis(const Eigen::MatrixXcd& qform) {
    const int n = static_cast<int>(qform.rows());
    Mat Q = complex_real_form(qform);
    return constrained_basis(complex_ambient(n), [Q](const Mat& x) {
        Vec herm = flatten(x.transpose() * Q + Q * x);
        cplx t = complex_from_real_form(x).trace();
        Vec r(herm.size() + 2);
        r << herm, t.real(), t.imag();
        return r;
    });
}

SpinOrbitModel make_unitary4(const std::string& name, int p, int q, const Eigen::MatrixXcd& qform) {
    SpinOrbitModel m = base(name, p, q, 8, Ring::C);
    m.lie_basis = su_basis(qform);
    Mat Q = complex_real_form(qform);
    m.membership_residual = [Q](const Mat& a) {
        return std::max({(a.transpose() * Q * a - Q).cwiseAbs().maxCoeff(), complex_defect(a),
                         std::abs(complex_from_real_form(a).determinant() - cplx(1, 0))});
    };
    attach_vectors(m, w_plus_basis(qform), complex_congruence, pf_real_part);
    Eigen::VectorXd d = qform.diagonal().real();
    m.invariants = [d](const Vec& s) {
        double nu = 0;
        for (int i = 0; i < 4; ++i) nu += d(i) * (s(2 * i) * s(2 * i) + s(2 * i + 1) * s(2 * i + 1));
        return InvariantRecord{{{"nu", nu}}, ""};
    };
    return m;
}

SpinOrbitModel make_spin51() {
    SpinOrbitModel m = base("SPIN51", 5, 1, 16, Ring::H);
    m.split_chiral = true;
    m.lie_basis = constrained_basis(quat_ambient(2), [](const Mat& x) {
        Vec r(1);
        r(0) = x.trace();
        return r;
    });
    m.spinor_derivative = [](const Mat& x) { return block_diag({x, Mat(-x.transpose())}); };
    m.spinor_matrix = [](const Mat& a) { return block_diag({a, Mat(a.inverse().transpose())}); };
    m.membership_residual = [](const Mat& a) { return std::max(quat_defect(a), std::abs(a.determinant() - 1.0)); };
    std::vector<Mat> raw = quat_hermitian_offdiag();
    raw.push_back(real_qmatrix(2, {{0, 0, Quaternion(1)}}));
    raw.push_back(real_qmatrix(2, {{1, 1, Quaternion(1)}}));
    m.square = [](const Vec& s) -> std::optional<Vec> {
        Mat c = quat_column(s.head(8));
        return flatten(c * c.transpose());
    };
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return -qdet_real_form(v); });
    m.invariants = [](const Vec& s) {
        Quaternion pair;
        for (int i = 0; i < 2; ++i) pair += Quaternion::from_vec(s, 8 + 4 * i).conj() * Quaternion::from_vec(s, 4 * i);
        return InvariantRecord{{{"pairing_0", pair[0]}, {"pairing_1", pair[1]}, {"pairing_2", pair[2]}, {"pairing_3", pair[3]}},
                               chirality_label(s)};
    };
    return m;
}

SpinOrbitModel make_spin33() {
    SpinOrbitModel m = base("SPIN33", 3, 3, 8, Ring::R);
    m.split_chiral = true;
    m.lie_basis = constrained_basis(real_ambient(4), [](const Mat& x) {
        Vec r(1);
        r(0) = x.trace();
        return r;
    });
    m.spinor_derivative = [](const Mat& x) { return block_diag({x, Mat(-x.transpose())}); };
    m.spinor_matrix = [](const Mat& a) { return block_diag({a, Mat(a.inverse().transpose())}); };
    m.membership_residual = [](const Mat& a) { return std::abs(a.determinant() - 1.0); };
    std::vector<Mat> raw;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Mat v = Mat::Zero(4, 4);
            v(i, j) = 1;
            v(j, i) = -1;
            raw.push_back(v);
        }
    attach_vectors(m, raw, conj_act, [](const Mat& v) { return pfaffian(v, 1e-8); });
    m.invariants = [](const Vec& s) {
        return InvariantRecord{{{"pairing", s.tail(4).dot(s.head(4))}}, chirality_label(s)};
    };
    return m;
}

}  // namespace

std::vector<std::string> model_names() {
    return {"SPIN2", "SPIN11", "SPIN3", "SPIN21", "SPIN4", "SPIN31", "SPIN22",
            "SPIN5", "SPIN41", "SPIN32", "SPIN6", "SPIN51", "SPIN42", "SPIN33"};
}

SpinOrbitModel make_model(const std::string& name) {
    if (name == "SPIN2") return make_spin2();
    if (name == "SPIN11") return make_spin11();
    if (name == "SPIN3") return make_spin3();
    if (name == "SPIN21") return make_spin21();
    if (name == "SPIN4") return make_spin4();
    if (name == "SPIN31") return make_spin31();
    if (name == "SPIN22") return make_spin22();
    if (name == "SPIN5") return make_spin5();
    if (name == "SPIN41") return make_spin41();
    if (name == "SPIN32") return make_spin32();
    if (name == "SPIN6") return make_unitary4("SPIN6", 6, 0, Eigen::MatrixXcd::Identity(4, 4));
    if (name == "SPIN51") return make_spin51();
    if (name == "SPIN42") {
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(4, 4);
        q(2, 2) = q(3, 3) = -1;
        return make_unitary4("SPIN42", 4, 2, q);
    }
    if (name == "SPIN33") return make_spin33();
    throw std::invalid_argument("unknown spin model " + name);
}

SpinOrbitModel clifford_orbit_model(int p, int q, std::uint64_t seed) {
    if (!((p == 4 && q == 3) || (p == 4 && q == 4))) throw std::invalid_argument("Clifford orbit models: (4,3) or (4,4)");
    SpinAlgebraBasis b = spin_representation(p, q, seed);
    SpinOrbitModel m;
    m.name = p == 4 && q == 3 ? "CL43" : "CL44";
    m.p = p;
    m.q = q;
    m.from_clifford = true;
    m.spinor_dim = b.spinor_dim;
    m.vector_dim = p + q;
    m.lie_basis = b.basis;
    const int n = p + q;
    auto vec_of = std::make_shared<std::vector<Mat>>();
    for (int k = 0; k < static_cast<int>(b.basis.size()); ++k) vec_of->push_back(b.vector_action(k));
    // Defining matrix = block diag(spinor matrix, vector matrix).
    std::vector<Mat> defining;
    for (size_t k = 0; k < b.basis.size(); ++k) defining.push_back(block_diag({b.basis[k], (*vec_of)[k]}));
    m.lie_basis = defining;
    const int sd = m.spinor_dim;
    m.spinor_derivative = [sd](const Mat& x) { return Mat(x.topLeftCorner(sd, sd)); };
    m.spinor_matrix = [sd](const Mat& a) { return Mat(a.topLeftCorner(sd, sd)); };
    m.vector_matrix = [sd, n](const Mat& a) { return Mat(a.block(sd, sd, n, n)); };
    Mat eta = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) eta(i, i) = b.eta[static_cast<size_t>(i)];
    m.vector_quadratic = [eta](const Vec& v) { return v.dot(eta * v); };

    // Chirality from the volume element when n is even.
    CliffordModel cm = build_algebra(p, q);
    Mat omega = Mat::Identity(cm.size(), cm.size());
    for (const auto& g : cm.gens) omega = omega * g;
    Mat w = b.embed.transpose() * omega * b.embed;
    Mat plus = Mat::Identity(sd, sd);
    if (n % 2 == 0) {
        if ((w * w - Mat::Identity(sd, sd)).cwiseAbs().maxCoeff() > 1e-9) throw std::runtime_error("volume element is not an involution");
        plus = 0.5 * (Mat::Identity(sd, sd) + w);
        m.split_chiral = true;
    }
    // Invariant symmetric forms: X^T B + B X = 0 on each chiral block.
    auto half_form = [&b](const Mat& proj) {
        Mat u = range_basis(proj);
        const int h = static_cast<int>(u.cols());
        std::vector<Mat> sym;
        for (int i = 0; i < h; ++i)
            for (int j = i; j < h; ++j) {
                Mat s = Mat::Zero(h, h);
                s(i, j) = s(j, i) = 1;
                sym.push_back(s);
            }
        std::vector<Mat> restricted;
        for (const auto& x : b.basis) restricted.push_back(u.transpose() * x * u);
        auto forms = constrained_basis(sym, [&restricted](const Mat& bm) {
            Vec r(static_cast<Eigen::Index>(restricted.size()) * bm.size());
            for (size_t k = 0; k < restricted.size(); ++k)
                r.segment(static_cast<Eigen::Index>(k) * bm.size(), bm.size()) =
                    flatten(restricted[k].transpose() * bm + bm * restricted[k]);
            return r;
        });
        if (forms.size() != 1) throw std::runtime_error("expected a unique invariant spinor form");
        Mat bf = forms[0] / forms[0].cwiseAbs().maxCoeff();
        return Mat(u * bf * u.transpose());
    };
    m.spinor_form = half_form(plus);
    if (n % 2 == 0) m.spinor_form += half_form(Mat::Identity(sd, sd) - plus);
    m.chirality_projector_plus = plus;
    m.vector_derivative = [sd, n](const Mat& x) { return Mat(x.block(sd, sd, n, n)); };
    m.membership_residual = [sd, n, eta](const Mat& a) {
        Mat v = a.block(sd, sd, n, n);
        return std::max({a.block(0, sd, sd, n).cwiseAbs().maxCoeff(), a.block(sd, 0, n, sd).cwiseAbs().maxCoeff(),
                         (v.transpose() * eta * v - eta).cwiseAbs().maxCoeff()});
    };
    Mat form = m.spinor_form;
    bool chiral = m.split_chiral;
    m.invariants = [form, chiral, plus](const Vec& s) {
        InvariantRecord r;
        r.values.push_back({"quadratic", s.dot(form * s)});
        if (chiral) {
            double np = (plus * s).norm(), nm = (s - plus * s).norm();
            double sc = std::max(1.0, s.norm());
            if (np <= 1e-12 * sc && nm <= 1e-12 * sc) r.chirality = "zero";
            else if (nm <= 1e-12 * sc) r.chirality = "chiral+";
            else if (np <= 1e-12 * sc) r.chirality = "chiral-";
            else r.chirality = "mixed";
        }
        return r;
    };
    return m;
}

GroupElement group_element(const SpinOrbitModel& m, const Vec& coeffs) {
    Mat x = Mat::Zero(m.lie_basis[0].rows(), m.lie_basis[0].cols());
    for (int k = 0; k < m.group_dim(); ++k) x += coeffs(k) * m.lie_basis[static_cast<size_t>(k)];
    GroupElement g;
    g.a = expm(x);
    g.spinor = m.spinor_matrix(g.a);
    g.vector = m.vector_matrix(g.a);
    return g;
}

GroupElement sample_group(const SpinOrbitModel& m, Rng& rng, double scale) {
    return group_element(m, scale * rng.normal_vec(m.group_dim()));
}

Vec sample_spinor(const SpinOrbitModel& m, Rng& rng) { return rng.normal_vec(m.spinor_dim); }

namespace {

void check_member(const SpinOrbitModel& m, const GroupElement& g) {
    double r = rel(m.membership_residual(g.a), g.a);
    if (r > 1e-10) throw std::invalid_argument(m.name + ": group element fails membership check");
}

}  // namespace

Vec act_spinor(const SpinOrbitModel& m, const GroupElement& g, const Vec& s) {
    check_member(m, g);
    return g.spinor * s;
}

Vec act_vector(const SpinOrbitModel& m, const GroupElement& g, const Vec& v) {
    check_member(m, g);
    return g.vector * v;
}

Vec square_spinor(const SpinOrbitModel& m, const Vec& s) {
    if (!m.square) throw std::invalid_argument(m.name + " has no squaring map");
    auto r = m.square(s);
    if (!r) throw std::invalid_argument(m.name + " has no squaring map");
    return *r;
}

InvariantRecord orbit_invariant(const SpinOrbitModel& m, const Vec& s) { return m.invariants(s); }

Mat vector_gram(const SpinOrbitModel& m) {
    const int d = m.vector_dim;
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec ei = Vec::Unit(d, i), ej = Vec::Unit(d, j);
            g(i, j) = 0.5 * (m.vector_quadratic(ei + ej) - m.vector_quadratic(ei) - m.vector_quadratic(ej));
        }
    return g;
}

Mat linearized_action(const SpinOrbitModel& m, const Vec& s) {
    Mat cols(m.spinor_dim, m.group_dim());
    for (int k = 0; k < m.group_dim(); ++k) cols.col(k) = m.spinor_derivative(m.lie_basis[static_cast<size_t>(k)]) * s;
    return cols;
}

int orbit_dimension(const SpinOrbitModel& m, const Vec& s, const RankOptions& opt) {
    if (s.norm() == 0.0) throw std::invalid_argument("orbit of the zero spinor");
    return guarded_rank(linearized_action(m, s), opt);
}

int stabilizer_dimension(const SpinOrbitModel& m, const Vec& s, const RankOptions& opt) {
    return m.group_dim() - orbit_dimension(m, s, opt);
}

bool is_pure(const SpinOrbitModel& m, const Vec& s, double tol) {
    if (s.norm() == 0.0) throw std::invalid_argument("purity of the zero spinor is undefined");
    const bool odd = (m.p + m.q) % 2 == 1;
    const bool split = m.p - m.q == 1 || m.p == m.q;
    if (!split) throw std::invalid_argument(m.name + " is not a split signature");
    if (m.from_clifford) {
        double qv = s.dot(m.spinor_form * s);
        bool null = std::abs(qv) <= tol * s.squaredNorm();
        if (odd) return null;
        std::string c = orbit_invariant(m, s).chirality;
        return null && (c == "chiral+" || c == "chiral-");
    }
    if (odd) return true;  // q <= 2: every nonzero spinor
    std::string c = chirality_label(s);
    return c == "chiral+" || c == "chiral-";
}

Vec swap_chirality(const SpinOrbitModel& m, const Vec& s) {
    if (!m.split_chiral || m.from_clifford) throw std::invalid_argument(m.name + " has no chirality swap");
    const Eigen::Index h = s.size() / 2;
    Vec r(s.size());
    r << s.tail(h), s.head(h);
    return r;
}

OrbitReport orbit_report(const SpinOrbitModel& m, const Vec& s) {
    OrbitReport r;
    r.spinor = s;
    r.invariants = orbit_invariant(m, s);
    r.orbit_dim = orbit_dimension(m, s);
    r.stabilizer_dim = m.group_dim() - r.orbit_dim;
    // No orbit-type labels for (4,4); only invariant values are reported.
    r.label = m.from_clifford && m.q == 4 ? "" : r.invariants.chirality;
    return r;
}

}  // namespace spinlab
