#include "spinlab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace spinlab {

Mat JetMat::value() const {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).value();
    return m;
}

Mat JetMat::partial(int k) const {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).partial(k);
    return m;
}

Mat JetMat::partial(int k, int l) const {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).partial(k, l);
    return m;
}

JetMat CoordinateMetric::metric_jets(const Vec& x, int order) const {
    if (x.size() != n) throw MetricError("point has wrong dimension for " + family_name(tag));
    return components(coordinate_jets(x, order));
}

JetMat CoordinateMetric::coframe_jets(const Vec& x, int order) const {
    if (x.size() != n) throw MetricError("point has wrong dimension for " + family_name(tag));
    return coframe(coordinate_jets(x, order));
}

Mat CoordinateMetric::at(const Vec& x) const { return metric_jets(x, 0).value(); }

double coframe_gram_residual(const CoordinateMetric& m, const Vec& x) {
    Mat e = m.coframe_jets(x, 0).value();
    return (e.transpose() * m.gram * e - m.at(x)).cwiseAbs().maxCoeff();
}

std::vector<Vec> probe_points(const CoordinateMetric& m, Rng& rng, int count, double half_width) {
    std::vector<Vec> out;
    int tries = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++tries > 100 * count + 100) throw MetricError("no nondegenerate probe points found");
        Vec x = Vec::NullaryExpr(m.n, [&] { return rng.uniform(-half_width, half_width); });
        if (std::abs(m.at(x).determinant()) < 1e-8) continue;
        out.push_back(x);
    }
    return out;
}

namespace {

CurvatureData curvature_from(const Mat& g, const std::vector<Mat>& dg, const std::vector<std::vector<Mat>>& ddg) {
    const int n = static_cast<int>(g.rows());
    CurvatureData c;
    c.n = n;
    c.g = g;
    if (std::abs(g.determinant()) < 1e-8) throw MetricError("metric is degenerate at the point");
    c.ginv = g.inverse();
    std::vector<Mat> dginv;
    for (int l = 0; l < n; ++l) dginv.push_back(-c.ginv * dg[static_cast<size_t>(l)] * c.ginv);

    auto C = [&](int m, int i, int j) {
        return dg[static_cast<size_t>(i)](j, m) + dg[static_cast<size_t>(j)](i, m) - dg[static_cast<size_t>(m)](i, j);
    };
    auto dC = [&](int l, int m, int i, int j) {
        const auto& d = ddg[static_cast<size_t>(l)];
        return d[static_cast<size_t>(i)](j, m) + d[static_cast<size_t>(j)](i, m) - d[static_cast<size_t>(m)](i, j);
    };
    c.gamma.assign(static_cast<size_t>(n), Mat::Zero(n, n));
    c.dgamma.assign(static_cast<size_t>(n * n), Mat::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                const double cm = C(m, i, j);
                for (int k = 0; k < n; ++k) c.gamma[static_cast<size_t>(k)](i, j) += 0.5 * c.ginv(k, m) * cm;
                for (int l = 0; l < n; ++l) {
                    const double dcm = dC(l, m, i, j);
                    for (int k = 0; k < n; ++k)
                        c.dgamma[static_cast<size_t>(l * n + k)](i, j) +=
                            0.5 * (dginv[static_cast<size_t>(l)](k, m) * cm + c.ginv(k, m) * dcm);
                }
            }
    auto G = [&](int k, int i, int j) { return c.gamma[static_cast<size_t>(k)](i, j); };
    auto dG = [&](int l, int k, int i, int j) { return c.dgamma[static_cast<size_t>(l * n + k)](i, j); };
    c.riemann.assign(static_cast<size_t>(n * n * n * n), 0.0);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            for (int m = 0; m < n; ++m)
                for (int v = m + 1; v < n; ++v) {
                    double val = dG(m, r, v, s) - dG(v, r, m, s);
                    for (int l = 0; l < n; ++l) val += G(r, m, l) * G(l, v, s) - G(r, v, l) * G(l, m, s);
                    c.riemann[static_cast<size_t>(((r * n + s) * n + m) * n + v)] = val;
                    c.riemann[static_cast<size_t>(((r * n + s) * n + v) * n + m)] = -val;
                }
    c.ricci = Mat::Zero(n, n);
    for (int s = 0; s < n; ++s)
        for (int v = 0; v < n; ++v)
            for (int r = 0; r < n; ++r) c.ricci(s, v) += c.R(r, s, r, v);
    return c;
}

}  // namespace

CurvatureData curvature(const CoordinateMetric& m, const Vec& x) {
    JetMat j = m.metric_jets(x, 2);
    const int n = m.n;
    std::vector<Mat> dg;
    std::vector<std::vector<Mat>> ddg(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        dg.push_back(j.partial(k));
        for (int l = 0; l < n; ++l) ddg[static_cast<size_t>(k)].push_back(j.partial(k, l));
    }
    return curvature_from(j.value(), dg, ddg);
}

Mat ricci_numeric(const CoordinateMetric& m, const Vec& x) { return curvature(m, x).ricci; }

Mat ricci_finite_difference(const CoordinateMetric& m, const Vec& x, double h) {
    const int n = m.n;
    auto g = [&](const Vec& p) { return m.at(p); };
    std::vector<Mat> dg;
    std::vector<std::vector<Mat>> ddg(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vec ek = Vec::Unit(n, k) * h;
        dg.push_back((g(x + ek) - g(x - ek)) / (2 * h));
        for (int l = 0; l < n; ++l) {
            Vec el = Vec::Unit(n, l) * h;
            ddg[static_cast<size_t>(k)].push_back((g(x + ek + el) - g(x + ek - el) - g(x - ek + el) + g(x - ek - el)) /
                                                  (4 * h * h));
        }
    }
    return curvature_from(g(x), dg, ddg).ricci;
}

RicciComparison compare_ricci(const CoordinateMetric& m, const std::vector<Vec>& points, std::optional<double> constant) {
    std::vector<Mat> closed, numeric;
    double pn = 0, nn = 0;
    RicciComparison r;
    for (const Vec& x : points) {
        closed.push_back(ricci_closed_form(m, x));
        numeric.push_back(ricci_numeric(m, x));
        pn += (closed.back().array() * numeric.back().array()).sum();
        nn += numeric.back().squaredNorm();
        r.max_numeric = std::max(r.max_numeric, numeric.back().cwiseAbs().maxCoeff());
    }
    r.samples = static_cast<int>(points.size());
    r.constant = constant ? *constant : (nn > 0 ? pn / nn : 1.0);
    double scale = 0, err = 0;
    for (size_t i = 0; i < closed.size(); ++i) {
        scale = std::max({scale, closed[i].cwiseAbs().maxCoeff(), std::abs(r.constant) * numeric[i].cwiseAbs().maxCoeff()});
        err = std::max(err, (closed[i] - r.constant * numeric[i]).cwiseAbs().maxCoeff());
    }
    r.max_relative_error = scale > 0 ? err / scale : err;
    return r;
}

ConnectionCheck adapted_connection_check(const CoordinateMetric& m, const Vec& x) {
    const int n = m.n;
    JetMat ej = m.coframe_jets(x, 1);
    ConnectionCheck c;
    c.coframe = ej.value();
    if (std::abs(c.coframe.determinant()) < 1e-12) throw MetricError("adapted coframe is degenerate at the point");
    const Mat f = c.coframe.inverse();
    c.gram_residual = (c.coframe.transpose() * m.gram * c.coframe - m.at(x)).cwiseAbs().maxCoeff();
    CurvatureData cd = curvature(m, x);
    const Mat q = span_basis(m.stabilizer);
    for (int v = 0; v < n; ++v) {
        Mat df = -f * ej.partial(v) * f;
        Mat gv(n, n);
        for (int mu = 0; mu < n; ++mu)
            for (int l = 0; l < n; ++l) gv(mu, l) = cd.gamma[static_cast<size_t>(mu)](v, l);
        Mat a = c.coframe * (df + gv * f);
        c.skew_residual = std::max(c.skew_residual, (a.transpose() * m.gram + m.gram * a).cwiseAbs().maxCoeff());
        c.residual = std::max(c.residual, residual_from_span(q, flatten(a)));
        c.alpha.push_back(a);
    }
    return c;
}

std::vector<Mat> frame_curvature(const CoordinateMetric& m, const Vec& x) {
    const int n = m.n;
    const Mat e = m.coframe_jets(x, 0).value();
    const Mat f = e.inverse();
    CurvatureData cd = curvature(m, x);
    std::vector<Mat> out;
    for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
            Mat r = Mat::Zero(n, n);
            for (int rho = 0; rho < n; ++rho)
                for (int s = 0; s < n; ++s) {
                    double v = 0;
                    for (int mu = 0; mu < n; ++mu) {
                        if (f(mu, c) == 0 && f(mu, d) == 0) continue;
                        for (int nu = 0; nu < n; ++nu) v += cd.R(rho, s, mu, nu) * f(mu, c) * f(nu, d);
                    }
                    r(rho, s) = v;
                }
            out.push_back(e * r * f);
        }
    return out;
}

FormAtPoint constant_form(int n, const std::vector<int>& indices) {
    FormAtPoint f;
    f.degree = static_cast<int>(indices.size());
    std::vector<int> s = indices;
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j + 1 < s.size() - i; ++j)
            if (s[j] > s[j + 1]) {
                std::swap(s[j], s[j + 1]);
                sign = -sign;
            }
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1]) return f;
    f.comps[s] = {static_cast<double>(sign), Vec::Zero(n)};
    return f;
}

namespace {

double form_component(const FormAtPoint& f, std::vector<int> idx, int grad = -1) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            } else if (idx[j] == idx[j + 1]) {
                return 0;
            }
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return 0;
    auto it = f.comps.find(idx);
    if (it == f.comps.end()) return 0;
    return sign * (grad < 0 ? it->second.first : it->second.second(grad));
}

void combos(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combos(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

double covariant_derivative_norm(const CoordinateMetric& m, const NamedForm& form, const Vec& x) {
    const int n = m.n;
    FormAtPoint f = form.eval(x);
    CurvatureData cd = curvature(m, x);
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    combos(n, f.degree, 0, cur, tuples);
    double worst = 0;
    for (int mu = 0; mu < n; ++mu)
        for (const auto& t : tuples) {
            double v = form_component(f, t, mu);
            for (size_t s = 0; s < t.size(); ++s)
                for (int l = 0; l < n; ++l) {
                    const double gm = cd.gamma[static_cast<size_t>(l)](mu, t[s]);
                    if (gm == 0) continue;
                    std::vector<int> u = t;
                    u[s] = l;
                    v -= gm * form_component(f, u);
                }
            worst = std::max(worst, std::abs(v));
        }
    return worst;
}

}  // namespace spinlab
