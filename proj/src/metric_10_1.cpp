#include "spinlab/geometry.hpp"
#include "spinlab/octo_spin.hpp"

#include <cmath>

namespace spinlab {

FiberFamily FiberFamily::identity() {
    FiberFamily f;
    f.label = "identity";
    f.derivs = [](double) {
        return std::array<Mat, 4>{Mat::Identity(8, 8), Mat::Zero(8, 8), Mat::Zero(8, 8), Mat::Zero(8, 8)};
    };
    return f;
}

FiberFamily FiberFamily::exponential(const Mat& s, std::string label) {
    if (s.rows() != 8 || s.cols() != 8) throw std::invalid_argument("fiber generator must be 8 x 8");
    FiberFamily f;
    f.label = std::move(label);
    f.derivs = [s](double x3) {
        Mat e = expm(x3 * s);
        return std::array<Mat, 4>{e, s * e, s * s * e, s * s * s * e};
    };
    return f;
}

std::vector<Mat> spin7_basis() {
    std::vector<Mat> out;
    for (const auto& a : k1_basis()) out.push_back(a[1]);
    return out;
}

std::vector<Mat> rho_prime_stabilizer() {
    std::vector<Mat> out;
    for (const auto& a : k1_basis()) {
        Spin101Params p;
        p.a1 = a[0];
        p.a3 = a[2];
        out.push_back(rho_prime(spin101_element(p)));
    }
    Spin101Params py;
    py.y = 1;
    out.push_back(rho_prime(spin101_element(py)));
    for (int i = 0; i < 8; ++i) {
        Spin101Params p;
        p.by = Octonion::unit(i);
        out.push_back(rho_prime(spin101_element(p)));
    }
    return out;
}

namespace {

std::vector<std::array<int, 4>> four_tuples() {
    std::vector<std::array<int, 4>> t;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            for (int c = b + 1; c < 8; ++c)
                for (int d = c + 1; d < 8; ++d) t.push_back({a, b, c, d});
    return t;
}

int tuple_index(std::array<int, 4> t, int& sign) {
    sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j + 1 < 4 - i; ++j) {
            if (t[static_cast<size_t>(j)] == t[static_cast<size_t>(j + 1)]) return -1;
            if (t[static_cast<size_t>(j)] > t[static_cast<size_t>(j + 1)]) {
                std::swap(t[static_cast<size_t>(j)], t[static_cast<size_t>(j + 1)]);
                sign = -sign;
            }
        }
    static const auto all = four_tuples();
    for (size_t k = 0; k < all.size(); ++k)
        if (all[k] == t) return static_cast<int>(k);
    return -1;
}

Mat minor4(const Mat& e, const std::array<int, 4>& rows, const std::array<int, 4>& cols) {
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = e(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
    return m;
}

}  // namespace

std::map<std::vector<int>, double> spin7_four_form() {
    const auto tuples = four_tuples();
    const int dim = static_cast<int>(tuples.size());
    const auto gens = spin7_basis();
    Mat a = Mat::Zero(dim * static_cast<int>(gens.size()), dim);
    for (size_t g = 0; g < gens.size(); ++g)
        for (int row = 0; row < dim; ++row) {
            const auto& t = tuples[static_cast<size_t>(row)];
            for (int s = 0; s < 4; ++s)
                for (int m = 0; m < 8; ++m) {
                    const double c = gens[g](m, t[static_cast<size_t>(s)]);
                    if (c == 0) continue;
                    auto u = t;
                    u[static_cast<size_t>(s)] = m;
                    int sign;
                    int col = tuple_index(u, sign);
                    if (col < 0) continue;
                    a(static_cast<int>(g) * dim + row, col) += sign * c;
                }
        }
    Mat k = kernel_basis(a);
    if (k.cols() != 1) throw std::runtime_error("spin(7) fixes " + std::to_string(k.cols()) + " four-forms, expected 1");
    Vec v = k.col(0);
    Eigen::Index big;
    v.cwiseAbs().maxCoeff(&big);
    v /= v(big);
    std::map<std::vector<int>, double> out;
    for (int i = 0; i < dim; ++i)
        if (std::abs(v(i)) > 1e-12) {
            const auto& t = tuples[static_cast<size_t>(i)];
            out[{t[0], t[1], t[2], t[3]}] = v(i);
        }
    return out;
}

CoordinateMetric build_metric_10_1(const FiberFamily& fiber, const FreeFunction& g) {
    std::vector<int> args;
    if (g.arity == 2) {
        args = {1, 2};
    } else if (g.arity == 11) {
        for (int i = 0; i < 11; ++i) args.push_back(i);
        if (g.poly) {
            for (const auto& [e, c] : g.poly->terms())
                if (e[0] != 0) throw MetricError("M101 function g depends on x1");
        } else {
            Rng rng(0x101);
            for (int k = 0; k < 4; ++k) {
                Vec x = Vec::NullaryExpr(11, [&] { return rng.uniform(-0.5, 0.5); });
                if (std::abs(g.at(x, 1).partial(0)) > 1e-12) throw MetricError("M101 function g depends on x1");
            }
        }
    } else {
        throw MetricError("M101 function g takes 2 arguments (x2, x3) or all 11 coordinates");
    }
    if (!fiber.derivs) throw MetricError("fiber family has no evaluation handle");

    CoordinateMetric m;
    m.tag = {Family::M101, 0};
    m.n = 11;
    m.signature = {10, 1};
    m.coords = {"x1", "x2", "x3"};
    for (int i = 1; i <= 8; ++i) m.coords.push_back("w" + std::to_string(i));
    m.functions = {g};
    m.gram = gram101();
    m.stabilizer = rho_prime_stabilizer();

    auto gjet = [g, args](const std::vector<Jet>& x) {
        std::vector<Jet> a;
        for (int i : args) a.push_back(x[static_cast<size_t>(i)]);
        return g(a);
    };
    auto fiber_jets = [fiber](const std::vector<Jet>& x) {
        const double x3 = x[2].value();
        const auto d = fiber.derivs(x3);
        Jet t = x[2] + (-x3);
        const int o = std::min(x[2].order(), 3);
        std::vector<Jet> pw{Jet::constant(x[2].set(), 1.0).truncate(x[2].order())};
        for (int k = 1; k <= o; ++k) pw.push_back(pw.back() * t);
        JetMat e(8, 8, Jet(x[2].set(), x[2].order()));
        double fact = 1;
        for (int k = 0; k <= o; ++k) {
            if (k > 0) fact *= k;
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    const double c = d[static_cast<size_t>(k)](i, j) / fact;
                    if (c != 0) e(i, j) += pw[static_cast<size_t>(k)] * c;
                }
        }
        return e;
    };
    m.components = [gjet, fiber_jets](const std::vector<Jet>& x) {
        JetMat out(11, 11, Jet(x[0].set(), x[0].order()));
        out(0, 2) = out(0, 2) + (-2.0);
        out(2, 0) = out(0, 2);
        out(1, 1) = out(1, 1) + 1.0;
        out(2, 2) = gjet(x) * (-4.0);
        JetMat e = fiber_jets(x);
        for (int i = 0; i < 8; ++i)
            for (int j = i; j < 8; ++j) {
                Jet s = Jet(x[0].set(), x[0].order());
                for (int a = 0; a < 8; ++a) s += e(a, i) * e(a, j);
                out(3 + i, 3 + j) = s;
                out(3 + j, 3 + i) = s;
            }
        return out;
    };
    m.coframe = [gjet, fiber_jets](const std::vector<Jet>& x) {
        JetMat out(11, 11, Jet(x[0].set(), x[0].order()));
        for (int i = 0; i < 3; ++i) out(i, i) = out(i, i) + 1.0;
        out(0, 2) = gjet(x);
        JetMat e = fiber_jets(x);
        for (int a = 0; a < 8; ++a)
            for (int i = 0; i < 8; ++i) out(3 + a, 3 + i) = e(a, i);
        return out;
    };

    m.parallel_forms.push_back({"dx3", [](const Vec&) { return constant_form(11, {2}); }});
    m.parallel_forms.push_back({"dx2^dx3", [](const Vec&) { return constant_form(11, {1, 2}); }});
    const auto phi = spin7_four_form();
    m.parallel_forms.push_back({"dx3^Phi", [phi, fiber](const Vec& x) {
                                    const auto d = fiber.derivs(x(2));
                                    FormAtPoint f;
                                    f.degree = 5;
                                    for (const auto& cols : four_tuples()) {
                                        double v = 0, dv = 0;
                                        for (const auto& [rows, c] : phi) {
                                            std::array<int, 4> r{rows[0], rows[1], rows[2], rows[3]};
                                            Mat mm = minor4(d[0], r, cols);
                                            v += c * mm.determinant();
                                            Mat md = minor4(d[1], r, cols);
                                            for (int k = 0; k < 4; ++k) {
                                                Mat t = mm;
                                                t.row(k) = md.row(k);
                                                dv += c * t.determinant();
                                            }
                                        }
                                        if (v == 0 && dv == 0) continue;
                                        Vec grad = Vec::Zero(11);
                                        grad(2) = dv;
                                        f.comps[{2, 3 + cols[0], 3 + cols[1], 3 + cols[2], 3 + cols[3]}] = {v, grad};
                                    }
                                    return f;
                                }});
    return m;
}

}  // namespace spinlab
