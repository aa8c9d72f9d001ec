#include "spinlab/algebra.hpp"
#include "spinlab/geometry.hpp"

#include <cmath>
#include <complex>
#include <regex>

namespace spinlab {

namespace {

Jet zero_like(const std::vector<Jet>& x) { return Jet(x[0].set(), x[0].order()); }

std::vector<Jet> pick(const std::vector<Jet>& x, const std::vector<int>& idx) {
    std::vector<Jet> out;
    for (int i : idx) out.push_back(x[static_cast<size_t>(i)]);
    return out;
}

JetMat constant_mat(const Mat& m, const std::vector<Jet>& x) {
    JetMat r(static_cast<int>(m.rows()), static_cast<int>(m.cols()), zero_like(x));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = r(i, j) + m(i, j);
    return r;
}

// Coordinate jets at the same point with a higher order.
std::vector<Jet> lift(const std::vector<Jet>& x, int extra) {
    Vec p(static_cast<Eigen::Index>(x.size()));
    for (size_t i = 0; i < x.size(); ++i) p(static_cast<Eigen::Index>(i)) = x[i].value();
    return coordinate_jets(p, x[0].order() + extra);
}

// Copy a jet onto another monomial set of the same variable count.
Jet relabel(const Jet& j, const std::vector<Jet>& like) {
    const int o = std::min(j.order(), like[0].order());
    Jet r(like[0].set(), o);
    for (int i = 0; i < like[0].set()->upto[static_cast<size_t>(o)]; ++i) r[i] = j[i];
    return r;
}

// Matrices X_k with columns X_k e_b = act(e_k, e_b): the linear template differentiated in its parameters.
std::vector<Mat> template_basis(int params, int n, const std::function<Vec(const Vec&, const Vec&)>& act) {
    std::vector<Mat> out;
    for (int k = 0; k < params; ++k) {
        Mat x(n, n);
        for (int b = 0; b < n; ++b) x.col(b) = act(Vec::Unit(params, k), Vec::Unit(n, b));
        out.push_back(x);
    }
    return out;
}

using M2c = Eigen::Matrix2cd;

struct QMat {
    Quaternion a, b, c, d;  // [[a, b], [c, d]]
    QMat operator*(const QMat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    QMat operator+(const QMat& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    QMat star() const { return {a.conj(), c.conj(), b.conj(), d.conj()}; }
};

Vec qvec(const Quaternion& q) {
    auto c = q.coeffs();
    return Eigen::Map<const Vec>(c.data(), 4);
}

// sl(p) basis: E_ij (i != j) then E_ii - E_pp.
std::vector<Mat> sl_basis(int p) {
    std::vector<Mat> out;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j) {
                Mat m = Mat::Zero(p, p);
                m(i, j) = 1;
                out.push_back(m);
            }
    for (int i = 0; i + 1 < p; ++i) {
        Mat m = Mat::Zero(p, p);
        m(i, i) = 1;
        m(p - 1, p - 1) = -1;
        out.push_back(m);
    }
    return out;
}

// Null p-plane stabilizer acting on (zeta, xi, eta) or (xi, eta).
std::vector<Mat> pure_stabilizer(int p, bool odd) {
    const int off = odd ? 1 : 0;
    const int n = 2 * p + off;
    std::vector<Mat> out;
    if (odd)
        for (int i = 0; i < p; ++i) {  // tau
            Mat m = Mat::Zero(n, n);
            m(0, 1 + i) = -1;
            m(1 + p + i, 0) = 1;
            out.push_back(m);
        }
    for (const Mat& phi : sl_basis(p)) {
        Mat m = Mat::Zero(n, n);
        m.block(off, off, p, p) = phi;
        m.block(off + p, off + p, p, p) = -phi.transpose();
        out.push_back(m);
    }
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {  // sigma
            Mat m = Mat::Zero(n, n);
            m(off + p + i, off + j) = 1;
            m(off + p + j, off + i) = -1;
            out.push_back(m);
        }
    return out;
}

Jet mat_det3(const std::array<std::array<Jet, 3>, 3>& h) {
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

// Mixed Hessian H_ij = d^2 f / dx^i dy_j for M33GEN, as jets at the order of x.
std::array<std::array<Jet, 3>, 3> mixed_hessian(const FreeFunction& f, const std::vector<Jet>& x) {
    Jet fj = f(lift(x, 2));
    std::array<std::array<Jet, 3>, 3> h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[static_cast<size_t>(i)][static_cast<size_t>(j)] = relabel(fj.deriv(i).deriv(3 + j), x);
    return h;
}

// s^{ij} = d^2 f / dy_i dy_j for M22DEG.
std::array<std::array<Jet, 2>, 2> y_hessian(const FreeFunction& f, const std::vector<Jet>& x) {
    Jet fj = f(lift(x, 2));
    std::array<std::array<Jet, 2>, 2> s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s[static_cast<size_t>(i)][static_cast<size_t>(j)] = relabel(fj.deriv(2 + i).deriv(2 + j), x);
    return s;
}

// Bracket of the pure-spinor Ricci display, shared by the odd and even cases:
// d_z^2 f_jl - d_xk d_yk f_jl + f_mk d_ym d_yk f_jl - d_yk f_mj d_ym f_kl.
// f[j][l] are jets of order >= 2 in the coordinates; dy(k, jet) differentiates in y_k.
Mat pure_bracket(int p, const std::vector<std::vector<Jet>>& f, int zvar, const std::vector<int>& xvar,
                 const std::function<Jet(int, const Jet&)>& dy) {
    Mat b = Mat::Zero(p, p);
    auto fv = [&](int i, int j) { return f[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
    for (int j = 0; j < p; ++j)
        for (int l = 0; l < p; ++l) {
            const Jet& fjl = fv(j, l);
            double v = 0;
            if (zvar >= 0) v += fjl.deriv(zvar).deriv(zvar).value();
            for (int k = 0; k < p; ++k) v -= dy(k, fjl.deriv(xvar[static_cast<size_t>(k)])).value();
            for (int m = 0; m < p; ++m)
                for (int k = 0; k < p; ++k) {
                    v += fv(m, k).value() * dy(m, dy(k, fjl)).value();
                    v -= dy(k, fv(m, j)).value() * dy(m, fv(k, l)).value();
                }
            b(j, l) = v;
        }
    return b;
}

std::vector<std::vector<Jet>> pure_functions(int p, const std::vector<FreeFunction>& fns, const std::vector<Jet>& x) {
    std::vector<std::vector<Jet>> f(static_cast<size_t>(p), std::vector<Jet>(static_cast<size_t>(p)));
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            Jet v = fns[static_cast<size_t>(pair_index(p, i, j))](x);
            f[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            f[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
        }
    return f;
}

void check_functions(const FamilyTag& tag, const std::vector<FreeFunction>& fns) {
    auto [count, arity] = family_arity(tag);
    if (static_cast<int>(fns.size()) != count)
        throw MetricError(family_name(tag) + " needs " + std::to_string(count) + " functions, got " +
                          std::to_string(fns.size()));
    for (const auto& f : fns)
        if (f.arity != arity)
            throw MetricError(family_name(tag) + " needs functions of " + std::to_string(arity) + " variables, got " +
                              std::to_string(f.arity));
}

}  // namespace

std::string family_name(const FamilyTag& tag) {
    switch (tag.family) {
        case Family::M21: return "M21";
        case Family::M31: return "M31";
        case Family::M22GEN: return "M22GEN";
        case Family::M22DEG: return "M22DEG";
        case Family::M41DEG: return "M41DEG";
        case Family::M51NULL: return "M51NULL";
        case Family::M33GEN: return "M33GEN";
        case Family::M33NULL: return "M33NULL";
        case Family::PUREODD: return "PUREODD(" + std::to_string(tag.p) + ")";
        case Family::PUREEVEN: return "PUREEVEN(" + std::to_string(tag.p) + ")";
        case Family::M101: return "M101";
    }
    return "?";
}

FamilyTag parse_family(const std::string& name) {
    static const std::map<std::string, Family> plain = {
        {"M21", Family::M21},         {"M31", Family::M31},       {"M22GEN", Family::M22GEN},
        {"M22DEG", Family::M22DEG},   {"M41DEG", Family::M41DEG}, {"M51NULL", Family::M51NULL},
        {"M33GEN", Family::M33GEN},   {"M33NULL", Family::M33NULL}, {"M101", Family::M101}};
    if (auto it = plain.find(name); it != plain.end()) return {it->second, 0};
    static const std::regex pure(R"((PUREODD|PUREEVEN)\((\d+)\))");
    std::smatch m;
    if (std::regex_match(name, m, pure)) {
        int p = std::stoi(m[2]);
        if (p < 1 || p > 8) throw MetricError("pure family size out of range: " + name);
        return {m[1] == "PUREODD" ? Family::PUREODD : Family::PUREEVEN, p};
    }
    throw MetricError("unknown family tag: " + name);
}

int pair_index(int p, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= p) throw std::out_of_range("pair index");
    return i * p - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> family_arity(const FamilyTag& tag) {
    switch (tag.family) {
        case Family::M21: return {1, 2};
        case Family::M31: return {1, 3};
        case Family::M22GEN: return {1, 3};
        case Family::M22DEG: return {1, 4};
        case Family::M41DEG: return {1, 4};
        case Family::M51NULL: return {1, 5};
        case Family::M33GEN: return {1, 6};
        case Family::M33NULL: return {3, 6};
        case Family::PUREODD: return {tag.p * (tag.p + 1) / 2, 2 * tag.p + 1};
        case Family::PUREEVEN: return {tag.p * (tag.p + 1) / 2, 2 * tag.p};
        case Family::M101: return {1, 2};
    }
    return {0, 0};
}

CoordinateMetric build_metric(const FamilyTag& tag, const std::vector<FreeFunction>& fns) {
    if (tag.family == Family::M101) {
        if (fns.size() != 1) throw MetricError("M101 needs one function g");
        return build_metric_10_1(FiberFamily::identity(), fns[0]);
    }
    if ((tag.family == Family::PUREODD || tag.family == Family::PUREEVEN) && (tag.p < 1 || tag.p > 8))
        throw MetricError("pure family needs 1 <= p <= 8");
    check_functions(tag, fns);

    CoordinateMetric m;
    m.tag = tag;
    m.functions = fns;
    const FreeFunction f0 = fns.empty() ? FreeFunction{} : fns[0];

    switch (tag.family) {
        case Family::M21: {
            m.n = 3;
            m.coords = {"x11", "x21", "x22"};
            m.signature = {1, 2};
            m.gram = Mat::Zero(3, 3);
            m.gram(0, 2) = m.gram(2, 0) = 0.5;
            m.gram(1, 1) = -1;
            m.components = [f0](const std::vector<Jet>& x) {
                Mat c = Mat::Zero(3, 3);
                c(0, 2) = c(2, 0) = 0.5;
                c(1, 1) = -1;
                JetMat g = constant_mat(c, x);
                g(2, 2) = f0(pick(x, {1, 2}));
                return g;
            };
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Identity(3, 3), x);
                e(0, 2) = f0(pick(x, {1, 2}));
                return e;
            };
            m.stabilizer = template_basis(1, 3, [](const Vec& a, const Vec& w) {
                Eigen::Matrix2d om, A;
                om << w(0), w(1), w(1), w(2);
                A << 0, a(0), 0, 0;
                Eigen::Matrix2d x = A * om + om * A.transpose();
                return Vec((Vec(3) << x(0, 0), x(1, 0), x(1, 1)).finished());
            });
            break;
        }
        case Family::M31: {
            m.n = 4;
            m.coords = {"x11", "u", "v", "x22"};
            m.signature = {1, 3};
            m.gram = Mat::Zero(4, 4);
            m.gram(0, 3) = m.gram(3, 0) = 0.5;
            m.gram(1, 1) = m.gram(2, 2) = -1;
            const Mat c = m.gram;
            m.components = [f0, c](const std::vector<Jet>& x) {
                JetMat g = constant_mat(c, x);
                g(3, 3) = f0(pick(x, {1, 2, 3}));
                return g;
            };
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Identity(4, 4), x);
                e(0, 3) = f0(pick(x, {1, 2, 3}));
                return e;
            };
            m.stabilizer = template_basis(2, 4, [](const Vec& a, const Vec& w) {
                const cplx w21(w(1), w(2));
                M2c om, A;
                om << w(0), std::conj(w21), w21, w(3);
                A << 0, cplx(a(0), a(1)), 0, 0;
                M2c x = A * om + om * A.adjoint();
                return Vec((Vec(4) << x(0, 0).real(), x(1, 0).real(), x(1, 0).imag(), x(1, 1).real()).finished());
            });
            break;
        }
        case Family::M22GEN: {
            m.n = 4;
            m.coords = {"x11", "x12", "x21", "x22"};
            m.signature = {2, 2};
            m.gram = Mat::Zero(4, 4);
            m.gram(0, 3) = m.gram(3, 0) = 0.5;
            m.gram(1, 2) = m.gram(2, 1) = -0.5;
            const Mat c = m.gram;
            m.components = [f0, c](const std::vector<Jet>& x) {
                JetMat g = constant_mat(c, x);
                g(3, 3) = f0(pick(x, {1, 2, 3}));
                return g;
            };
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Identity(4, 4), x);
                e(0, 3) = f0(pick(x, {1, 2, 3}));
                return e;
            };
            m.stabilizer = template_basis(2, 4, [](const Vec& a, const Vec& w) {
                Eigen::Matrix2d om, al, be;
                om << w(0), w(1), w(2), w(3);
                al << 0, a(0), 0, 0;
                be << 0, 0, a(1), 0;
                Eigen::Matrix2d x = al * om + om * be;
                return Vec((Vec(4) << x(0, 0), x(0, 1), x(1, 0), x(1, 1)).finished());
            });
            break;
        }
        case Family::M22DEG: {
            m.n = 4;
            m.coords = {"x1", "x2", "y1", "y2"};
            m.signature = {2, 2};
            m.gram = Mat::Zero(4, 4);
            m.gram(0, 3) = m.gram(3, 0) = 0.5;
            m.gram(1, 2) = m.gram(2, 1) = -0.5;
            m.components = [f0](const std::vector<Jet>& x) {
                Mat c = Mat::Zero(4, 4);
                c(3, 0) = c(0, 3) = 0.5;
                c(2, 1) = c(1, 2) = -0.5;
                JetMat g = constant_mat(c, x);
                auto s = y_hessian(f0, x);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) g(i, j) = s[static_cast<size_t>(i)][static_cast<size_t>(j)];
                return g;
            };
            // y -> -y in the derived coframe, matching the displayed sign of dy.
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Zero(4, 4), x);
                auto s = y_hessian(f0, x);
                e(0, 2) = e(0, 2) + (-1.0);
                e(0, 0) = s[0][1];
                e(0, 1) = s[1][1];
                e(1, 3) = e(1, 3) + (-1.0);
                e(1, 0) = -s[0][0];
                e(1, 1) = -s[0][1];
                e(2, 0) = e(2, 0) + 1.0;
                e(3, 1) = e(3, 1) + 1.0;
                return e;
            };
            m.stabilizer = template_basis(4, 4, [](const Vec& a, const Vec& w) {
                Eigen::Matrix2d om, al, be;
                om << w(0), w(1), w(2), w(3);
                al << 0, a(0), 0, 0;
                be << a(1), a(2), a(3), -a(1);
                Eigen::Matrix2d x = al * om + om * be;
                return Vec((Vec(4) << x(0, 0), x(0, 1), x(1, 0), x(1, 1)).finished());
            });
            break;
        }
        case Family::M41DEG: {
            m.n = 5;
            m.coords = {"x", "s1", "s2", "s3", "r"};
            m.signature = {4, 1};
            m.gram = Mat::Identity(5, 5);
            m.gram(0, 0) = -1;
            m.components = [f0](const std::vector<Jet>& x) {
                Mat c = Mat::Zero(5, 5);
                c(1, 1) = c(2, 2) = c(3, 3) = 1;
                c(0, 4) = c(4, 0) = -1;
                JetMat g = constant_mat(c, x);
                g(0, 0) = f0(pick(x, {0, 1, 2, 3})) * (-2.0) + (-1.0);
                return g;
            };
            // w1 = rho + xi, w2 = rho + sigma with xi = dx, sigma = ds, rho = dr + f dx.
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Zero(5, 5), x);
                Jet f = f0(pick(x, {0, 1, 2, 3}));
                e(0, 0) = f + 1.0;
                e(0, 4) = e(0, 4) + 1.0;
                e(1, 0) = f;
                e(1, 4) = e(1, 4) + 1.0;
                for (int a = 1; a <= 3; ++a) e(1 + a, a) = e(1 + a, a) + 1.0;
                return e;
            };
            m.stabilizer = template_basis(3, 5, [](const Vec& a, const Vec& w) {
                Quaternion u(0, a(0), a(1), a(2));
                Quaternion w2 = Quaternion::from_vec(w, 1);
                QMat om{Quaternion(w(0)), w2, w2.conj(), Quaternion(w(0))};
                QMat A{u, -u, u, -u};
                QMat x = A * om + om * A.star();
                Vec out(5);
                out(0) = x.a.re();
                out.tail(4) = qvec(x.b);
                return out;
            });
            break;
        }
        case Family::M51NULL: {
            m.n = 6;
            m.coords = {"x11", "q0", "q1", "q2", "q3", "x22"};
            m.signature = {5, 1};
            m.gram = Mat::Zero(6, 6);
            m.gram(0, 5) = m.gram(5, 0) = -0.5;
            for (int i = 1; i <= 4; ++i) m.gram(i, i) = 1;
            const Mat c = m.gram;
            m.components = [f0, c](const std::vector<Jet>& x) {
                JetMat g = constant_mat(c, x);
                g(5, 5) = -f0(pick(x, {1, 2, 3, 4, 5}));
                return g;
            };
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Identity(6, 6), x);
                e(0, 5) = f0(pick(x, {1, 2, 3, 4, 5}));
                return e;
            };
            m.stabilizer = template_basis(4, 6, [](const Vec& a, const Vec& w) {
                Quaternion q = Quaternion::from_vec(a, 0);
                Quaternion w12 = Quaternion::from_vec(w, 1);
                QMat om{Quaternion(w(0)), w12, w12.conj(), Quaternion(w(5))};
                QMat A{Quaternion(), q, Quaternion(), Quaternion()};
                QMat x = A * om + om * A.star();
                Vec out(6);
                out(0) = x.a.re();
                out.segment(1, 4) = qvec(x.b);
                out(5) = x.d.re();
                return out;
            });
            break;
        }
        case Family::M33GEN: {
            m.n = 6;
            m.coords = {"x1", "x2", "x3", "y1", "y2", "y3"};
            m.signature = {3, 3};
            m.gram = Mat::Zero(6, 6);
            m.gram.block(0, 3, 3, 3) = 0.5 * Mat::Identity(3, 3);
            m.gram.block(3, 0, 3, 3) = 0.5 * Mat::Identity(3, 3);
            m.components = [f0](const std::vector<Jet>& x) {
                JetMat g = constant_mat(Mat::Zero(6, 6), x);
                auto h = mixed_hessian(f0, x);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        g(i, 3 + j) = h[static_cast<size_t>(i)][static_cast<size_t>(j)] * 0.5;
                        g(3 + j, i) = g(i, 3 + j);
                    }
                return g;
            };
            m.coframe = [f0](const std::vector<Jet>& x) {
                JetMat e = constant_mat(Mat::Zero(6, 6), x);
                auto h = mixed_hessian(f0, x);
                for (int i = 0; i < 3; ++i) {
                    e(i, i) = e(i, i) + 1.0;
                    for (int j = 0; j < 3; ++j) e(3 + i, 3 + j) = h[static_cast<size_t>(i)][static_cast<size_t>(j)];
                }
                return e;
            };
            for (const Mat& a : sl_basis(3)) {
                Mat x = Mat::Zero(6, 6);
                x.block(0, 0, 3, 3) = a;
                x.block(3, 3, 3, 3) = -a.transpose();
                m.stabilizer.push_back(x);
            }
            // Monge-Ampere: det of the mixed Hessian is 1.
            Rng rng(0x3303);
            std::vector<Vec> probes{Vec::Zero(6)};
            for (int k = 0; k < 3; ++k) probes.push_back(Vec::NullaryExpr(6, [&] { return rng.uniform(-0.5, 0.5); }));
            for (const Vec& p : probes) {
                double d = mat_det3(mixed_hessian(f0, coordinate_jets(p, 0))).value();
                if (std::abs(d - 1) > 1e-9)
                    throw MetricError("M33GEN function violates the Monge-Ampere equation: det = " + std::to_string(d));
            }
            break;
        }
        case Family::M33NULL:
        case Family::PUREEVEN:
        case Family::PUREODD: {
            const bool odd = tag.family == Family::PUREODD;
            const int p = tag.family == Family::M33NULL ? 3 : tag.p;
            const int off = odd ? 1 : 0;
            m.n = 2 * p + off;
            if (odd) m.coords.push_back("z");
            for (int i = 1; i <= p; ++i) m.coords.push_back("x" + std::to_string(i));
            for (int i = 1; i <= p; ++i) m.coords.push_back("y" + std::to_string(i));
            m.signature = {p + off, p};
            const double h = odd ? 1.0 : 0.5;
            m.gram = Mat::Zero(m.n, m.n);
            if (odd) m.gram(0, 0) = 1;
            m.gram.block(off, off + p, p, p) = h * Mat::Identity(p, p);
            m.gram.block(off + p, off, p, p) = h * Mat::Identity(p, p);
            std::vector<FreeFunction> full = fns;
            if (tag.family == Family::M33NULL) {  // f11, f12, f22; f_i3 = 0
                full = {fns[0], fns[1], FreeFunction::zero(6), fns[2], FreeFunction::zero(6), FreeFunction::zero(6)};
            }
            const Mat c = m.gram;
            m.components = [full, p, off, odd, c](const std::vector<Jet>& x) {
                JetMat g = constant_mat(c, x);
                auto f = pure_functions(p, full, x);
                for (int i = 0; i < p; ++i)
                    for (int j = 0; j < p; ++j)
                        g(off + i, off + j) = f[static_cast<size_t>(i)][static_cast<size_t>(j)] * (odd ? 2.0 : 1.0);
                return g;
            };
            m.coframe = [full, p, off](const std::vector<Jet>& x) {
                const int n = 2 * p + off;
                JetMat e = constant_mat(Mat::Identity(n, n), x);
                auto f = pure_functions(p, full, x);
                for (int i = 0; i < p; ++i)
                    for (int j = 0; j < p; ++j) e(off + p + i, off + j) = f[static_cast<size_t>(i)][static_cast<size_t>(j)];
                return e;
            };
            m.stabilizer = pure_stabilizer(p, odd);
            break;
        }
        case Family::M101: break;
    }
    return m;
}

bool has_closed_form_ricci(const FamilyTag& tag) {
    switch (tag.family) {
        case Family::PUREODD:
        case Family::PUREEVEN:
        case Family::M33NULL:
        case Family::M22DEG:
        case Family::M22GEN:
        case Family::M31:
        case Family::M41DEG:
        case Family::M51NULL: return true;
        default: return false;
    }
}

Mat ricci_closed_form(const FamilyTag& tag, const std::vector<FreeFunction>& fns, const Vec& x) {
    if (!has_closed_form_ricci(tag)) throw MetricError(family_name(tag) + " has no closed-form Ricci display");
    check_functions(tag, fns);
    auto laplacian = [&](const FreeFunction& f, const Vec& at, const std::vector<int>& vars) {
        Jet j = f.at(at, 2);
        double s = 0;
        for (int v : vars) s += j.partial(v, v);
        return s;
    };
    switch (tag.family) {
        case Family::M31: {
            Mat r = Mat::Zero(4, 4);
            r(3, 3) = laplacian(fns[0], x.segment(1, 3), {0, 1});
            return r;
        }
        case Family::M41DEG: {
            Mat r = Mat::Zero(5, 5);
            r(0, 0) = laplacian(fns[0], x.head(4), {1, 2, 3});
            return r;
        }
        case Family::M51NULL: {
            Mat r = Mat::Zero(6, 6);
            r(5, 5) = laplacian(fns[0], x.segment(1, 5), {0, 1, 2, 3});
            return r;
        }
        case Family::M22GEN: {
            Mat r = Mat::Zero(4, 4);
            r(3, 3) = fns[0].at(x.segment(1, 3), 2).partial(0, 1);
            return r;
        }
        case Family::M22DEG: {
            // Pure even form with y' = (y2, -y1) and f'_ij = s^{ij}.
            auto xj = coordinate_jets(x, 4);
            Jet f = fns[0](xj);
            std::vector<std::vector<Jet>> s(2, std::vector<Jet>(2));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) s[static_cast<size_t>(i)][static_cast<size_t>(j)] = f.deriv(2 + i).deriv(2 + j);
            auto dy = [](int k, const Jet& a) { return k == 0 ? a.deriv(3) : -a.deriv(2); };
            Mat r = Mat::Zero(4, 4);
            r.block(0, 0, 2, 2) = 2 * pure_bracket(2, s, -1, {0, 1}, dy);
            return r;
        }
        case Family::M33NULL:
        case Family::PUREEVEN:
        case Family::PUREODD: {
            const bool odd = tag.family == Family::PUREODD;
            const int p = tag.family == Family::M33NULL ? 3 : tag.p;
            const int off = odd ? 1 : 0;
            std::vector<FreeFunction> full = fns;
            if (tag.family == Family::M33NULL)
                full = {fns[0], fns[1], FreeFunction::zero(6), fns[2], FreeFunction::zero(6), FreeFunction::zero(6)};
            auto xj = coordinate_jets(x, 2);
            auto f = pure_functions(p, full, xj);
            std::vector<int> xv;
            for (int k = 0; k < p; ++k) xv.push_back(off + k);
            auto dy = [p, off](int k, const Jet& a) { return a.deriv(off + p + k); };
            Mat r = Mat::Zero(2 * p + off, 2 * p + off);
            r.block(off, off, p, p) = 2 * pure_bracket(p, f, odd ? 0 : -1, xv, dy);
            return r;
        }
        default: break;
    }
    throw MetricError("unreachable");
}

Mat ricci_closed_form(const CoordinateMetric& m, const Vec& x) { return ricci_closed_form(m.tag, m.functions, x); }

ConstraintReport constraint_check(const CoordinateMetric& m, const std::vector<Vec>& points) {
    ConstraintReport rep;
    const FamilyTag& tag = m.tag;
    if (tag.family == Family::PUREODD || tag.family == Family::PUREEVEN || tag.family == Family::M33NULL) {
        const int p = tag.family == Family::M33NULL ? 3 : tag.p;
        const int off = tag.family == Family::PUREODD ? 1 : 0;
        const int rows = tag.family == Family::M33NULL ? 2 : p;
        std::vector<FreeFunction> full = m.functions;
        if (tag.family == Family::M33NULL)
            full = {m.functions[0], m.functions[1], FreeFunction::zero(6), m.functions[2], FreeFunction::zero(6),
                    FreeFunction::zero(6)};
        for (int i = 0; i < rows; ++i) {
            rep.names.push_back("sum_j df_" + std::to_string(i + 1) + "j/dy_j");
            rep.residuals.push_back(0);
        }
        for (const Vec& x : points) {
            auto f = pure_functions(p, full, coordinate_jets(x, 1));
            for (int i = 0; i < rows; ++i) {
                double s = 0;
                for (int j = 0; j < p; ++j) s += f[static_cast<size_t>(i)][static_cast<size_t>(j)].partial(off + p + j);
                rep.residuals[static_cast<size_t>(i)] = std::max(rep.residuals[static_cast<size_t>(i)], std::abs(s));
            }
        }
    } else if (tag.family == Family::M33GEN) {
        rep.names.push_back("det H - 1");
        rep.residuals.push_back(0);
        for (const Vec& x : points) {
            double d = mat_det3(mixed_hessian(m.functions[0], coordinate_jets(x, 0))).value();
            rep.residuals[0] = std::max(rep.residuals[0], std::abs(d - 1));
        }
    }
    return rep;
}

double ConstraintReport::max() const {
    double r = 0;
    for (double v : residuals) r = std::max(r, v);
    return r;
}

}  // namespace spinlab
