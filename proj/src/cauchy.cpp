#include "spinlab/cauchy.hpp"

#include "spinlab/geometry.hpp"

#include <string>

namespace spinlab {

namespace {

int pair_count(int p) { return p * (p + 1) / 2; }

void check_shape(const CauchyData& d) {
    if (d.order < 2) throw CauchyError("truncation order N must be at least 2, got " + std::to_string(d.order));
    if (d.p < 1 || d.p > 4) throw CauchyError("p must be between 1 and 4");
    const size_t n = static_cast<size_t>(pair_count(d.p));
    if (d.a.size() != n || d.b.size() != n)
        throw CauchyError("expected " + std::to_string(n) + " functions a_jl and b_jl");
    for (const auto* v : {&d.a, &d.b})
        for (const Poly& q : *v)
            if (q.arity() != 2 * d.p) throw CauchyError("data must be polynomials in the 2p variables (x, y)");
}

Poly lift(const Poly& q, bool odd) {
    if (!odd) return q;
    std::vector<int> map;
    for (int i = 0; i < q.arity(); ++i) map.push_back(i + 1);
    return q.embed(q.arity() + 1, map);
}

Poly keep(const Poly& q, int var, bool zero_power) {
    Poly r(q.arity());
    for (const auto& [e, c] : q.terms())
        if ((e[static_cast<size_t>(var)] == 0) == zero_power) r.add_term(e, c);
    return r;
}

// sum_j d q_ij / dy_j for the given row, polynomials in (x, y).
Poly row_trace(const std::vector<Poly>& q, int p, int i) {
    Poly s(2 * p);
    for (int j = 0; j < p; ++j) s = s + q[static_cast<size_t>(pair_index(p, i, j))].deriv(p + j);
    return s;
}


// Even case: the recursion fixes every coefficient with y_1 > 0, so A_l on {y_1 = 0} is left to the data.
// Shift f_{2l} there (x^1-degree kk, y_2-antiderivative without constant) until A_l vanishes on that face.
void complete_goursat(CauchySolution& s, int kk, std::vector<Poly>& corr) {
    const int p = s.p;
    const int N = s.order;
    const auto& set = *s.f[0].set();
    const int y1 = s.y_index(0), y2 = s.y_index(1);
    for (int i = 0; i < set.upto[static_cast<size_t>(N - 1)]; ++i) {
        const Exponent& m = set.mons[static_cast<size_t>(i)];
        if (m[0] != kk || m[static_cast<size_t>(y1)] != 0) continue;
        for (int l = 0; l < p; ++l) {
            mpq_class a = 0;
            for (int j = 0; j < p; ++j) {
                Exponent e = m;
                ++e[static_cast<size_t>(s.y_index(j))];
                a += (e[static_cast<size_t>(s.y_index(j))]) * s.f[static_cast<size_t>(pair_index(p, j, l))][set.find(e)];
            }
            if (a == 0) continue;
            Exponent e = m;
            ++e[static_cast<size_t>(y2)];
            const mpq_class d = -a / e[static_cast<size_t>(y2)];
            const size_t u = static_cast<size_t>(pair_index(p, 1, l));
            s.f[u][set.find(e)] += d;
            corr[u].add_term(e, d);
        }
    }
}

}  // namespace

const JetSeries& CauchySolution::at(int j, int l) const { return f[static_cast<size_t>(pair_index(p, j, l))]; }

std::vector<Poly> data_constraint_residuals(const CauchyData& data) {
    check_shape(data);
    std::vector<Poly> out;
    for (int i = 0; i < data.p; ++i) out.push_back(row_trace(data.a, data.p, i).truncate(data.order));
    if (data.odd)
        for (int i = 0; i < data.p; ++i) out.push_back(row_trace(data.b, data.p, i).truncate(data.order));
    return out;
}

std::vector<JetSeries> ivp_rhs(const CauchySolution& s) {
    const int p = s.p;
    std::vector<JetSeries> dy(static_cast<size_t>(p * pair_count(p)));
    auto D = [&](int k, int j, int l) -> const JetSeries& {
        return dy[static_cast<size_t>(k * pair_count(p) + pair_index(p, j, l))];
    };
    for (int k = 0; k < p; ++k)
        for (int u = 0; u < pair_count(p); ++u)
            dy[static_cast<size_t>(k * pair_count(p) + u)] = s.f[static_cast<size_t>(u)].deriv(s.y_index(k));
    std::vector<JetSeries> out;
    for (int j = 0; j < p; ++j)
        for (int l = j; l < p; ++l) {
            JetSeries r(s.f[0].set(), s.order - 2);
            for (int k = 0; k < p; ++k) r += D(k, j, l).deriv(s.x_index(k));
            for (int m = 0; m < p; ++m)
                for (int k = 0; k < p; ++k) {
                    r -= s.at(m, k) * D(m, j, l).deriv(s.y_index(k));
                    r += D(k, m, j) * D(m, k, l);
                }
            out.push_back(r);
        }
    return out;
}

CauchySolution solve_ricci_ivp(const CauchyData& data, const CauchyOptions& opt) {
    check_shape(data);
    if (!opt.allow_constraint_violation) {
        for (const Poly& r : data_constraint_residuals(data))
            if (!r.is_zero()) throw CauchyError("initial data violate the constraint sum_j d a_ij/dy_j = 0");
    }
    const int p = data.p;
    const int N = data.order;
    CauchySolution s;
    s.p = p;
    s.order = N;
    s.odd = data.odd;
    s.form = data.odd ? opt.form : RicciForm::Display;
    const bool oracle = s.form == RicciForm::Oracle;
    const int nv = s.vars();
    auto set = MonomialSet::get(nv, N);
    // Variable whose degree drives the recursion, and the second variable differentiated with it.
    int lead, partner;
    if (data.odd) {
        lead = partner = 0;
        for (int u = 0; u < pair_count(p); ++u) {
            Poly init = lift(data.a[static_cast<size_t>(u)], true) +
                        lift(data.b[static_cast<size_t>(u)], true) * Poly::variable(nv, 0);
            s.f.push_back(to_exact_jet(init, N));
        }
    } else {
        lead = 0;
        partner = p;
        for (int u = 0; u < pair_count(p); ++u) {
            const Poly& a = data.a[static_cast<size_t>(u)];
            const Poly& b = data.b[static_cast<size_t>(u)];
            if (!keep(a, lead, false).is_zero()) throw CauchyError("even data a_jl must not depend on x1");
            if (!keep(b, partner, false).is_zero()) throw CauchyError("even data b_jl must not depend on y1");
            if (!(keep(a, partner, true) == keep(b, lead, true)))
                throw CauchyError("even data disagree on the corner x1 = y1 = 0");
            s.f.push_back(to_exact_jet(a + keep(b, lead, false), N));
        }
    }
    std::vector<Poly> corrections(static_cast<size_t>(data.odd ? 0 : pair_count(p)), Poly(nv));
    for (int k = 0; k + 2 <= N; ++k) {
        const auto rhs = ivp_rhs(s);
        const int top = set->upto[static_cast<size_t>(N - 2)];
        for (int i = 0; i < top; ++i) {
            const Exponent& m = set->mons[static_cast<size_t>(i)];
            if (m[static_cast<size_t>(lead)] != k) continue;
            Exponent e = m;
            ++e[static_cast<size_t>(lead)];
            ++e[static_cast<size_t>(partner)];
            const int t = set->find(e);
            // odd: (k+1)(k+2) c = rhs (or -2 rhs);  even: (k+1)(b+1) c = -rhs
            const mpq_class w = data.odd ? mpq_class(mpq_class((k + 1) * (k + 2)) / (oracle ? -2 : 1))
                                         : mpq_class(-(k + 1) * (m[static_cast<size_t>(partner)] + 1));
            for (int u = 0; u < pair_count(p); ++u) {
                const mpq_class& v = rhs[static_cast<size_t>(u)][i];
                if (v != 0) s.f[static_cast<size_t>(u)][t] = v / w;
            }
        }
        if (!data.odd && p >= 2) complete_goursat(s, k + 1, corrections);
    }
    s.corrections = corrections;
    return s;
}

std::vector<JetSeries> constraint_residual(const CauchySolution& s) {
    std::vector<JetSeries> out;
    for (int l = 0; l < s.p; ++l) {
        JetSeries a(s.f[0].set(), s.order - 1);
        for (int j = 0; j < s.p; ++j) a += s.at(j, l).deriv(s.y_index(j));
        out.push_back(a);
    }
    return out;
}

RicciSeriesReport verify_ricci_flat(const CauchySolution& s) {
    RicciSeriesReport rep;
    rep.order = s.order - 2;
    const auto rhs = ivp_rhs(s);
    for (int u = 0; u < pair_count(s.p); ++u) {
        const JetSeries& q = rhs[static_cast<size_t>(u)];
        JetSeries r = q * mpq_class(-2);
        if (s.odd && s.form == RicciForm::Display) r = (s.f[static_cast<size_t>(u)].deriv(0).deriv(0) - q) * mpq_class(2);
        if (s.odd && s.form == RicciForm::Oracle) r = (s.f[static_cast<size_t>(u)].deriv(0).deriv(0) + q * mpq_class(2)) * mpq_class(-1);
        rep.ricci.push_back(r);
    }
    rep.zero = true;
    for (const auto& r : rep.ricci) {
        const int d = lowest_degree(r);
        if (d < 0) continue;
        rep.zero = false;
        if (rep.first_nonzero_degree < 0 || d < rep.first_nonzero_degree) rep.first_nonzero_degree = d;
    }
    return rep;
}

CauchySolution restrict_order(const CauchySolution& s, int order) {
    CauchySolution r = s;
    r.order = std::min(order, s.order);
    for (auto& f : r.f) f = f.truncate(r.order);
    return r;
}

bool same_coefficients(const CauchySolution& a, const CauchySolution& b) {
    if (a.p != b.p || a.odd != b.odd || a.order != b.order || a.form != b.form) return false;
    for (size_t u = 0; u < a.f.size(); ++u)
        if (!(from_exact_jet(a.f[u]) == from_exact_jet(b.f[u]))) return false;
    return true;
}

std::vector<Poly> solution_polynomials(const CauchySolution& s) {
    std::vector<Poly> out;
    for (const auto& f : s.f) out.push_back(from_exact_jet(f));
    return out;
}

int lowest_degree(const JetSeries& j) {
    const auto& set = *j.set();
    for (int i = 0; i < set.upto[static_cast<size_t>(j.order())]; ++i)
        if (j[i] != 0) return set.degree[static_cast<size_t>(i)];
    return -1;
}

}  // namespace spinlab
