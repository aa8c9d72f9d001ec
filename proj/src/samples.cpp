#include "spinlab/samples.hpp"

#include <algorithm>

namespace spinlab {

Poly random_poly(int arity, int lo, int hi, Rng& rng, int range, double density) {
    Poly p(arity);
    auto set = MonomialSet::get(arity, hi);
    for (int i = 0; i < set->size(); ++i) {
        const int d = set->degree[static_cast<size_t>(i)];
        if (d < lo || rng.uniform(0, 1) > density) continue;
        int c = 0;
        while (c == 0) c = rng.integer(-range, range);
        p.add_term(set->mons[static_cast<size_t>(i)], c);
    }
    return p;
}

std::vector<std::vector<mpq_class>> exact_kernel(const std::vector<std::vector<mpq_class>>& rows_in, int cols) {
    auto rows = rows_in;
    std::vector<int> pivots;
    size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][static_cast<size_t>(c)] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        const mpq_class inv = 1 / rows[r][static_cast<size_t>(c)];
        for (auto& v : rows[r]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][static_cast<size_t>(c)] == 0) continue;
            const mpq_class f = rows[i][static_cast<size_t>(c)];
            for (int j = c; j < cols; ++j) rows[i][static_cast<size_t>(j)] -= f * rows[r][static_cast<size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<mpq_class>> out;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<mpq_class> v(static_cast<size_t>(cols), mpq_class(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[static_cast<size_t>(pivots[i])] = -rows[i][static_cast<size_t>(free)];
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

struct PureLayout {
    int p = 0, off = 0, arity = 0;
    std::vector<std::pair<int, int>> pairs;  // unknown functions (i, j), i <= j
    int rows = 0;                            // constraint rows enforced
};

PureLayout layout(const FamilyTag& tag) {
    PureLayout l;
    if (tag.family == Family::M33NULL) {
        l.p = 3;
        l.arity = 6;
        l.pairs = {{0, 0}, {0, 1}, {1, 1}};
        l.rows = 2;
        return l;
    }
    if (tag.family != Family::PUREODD && tag.family != Family::PUREEVEN)
        throw std::invalid_argument("trace-free functions exist only for the pure families");
    l.p = tag.p;
    l.off = tag.family == Family::PUREODD ? 1 : 0;
    l.arity = 2 * l.p + l.off;
    for (int i = 0; i < l.p; ++i)
        for (int j = i; j < l.p; ++j) l.pairs.push_back({i, j});
    l.rows = l.p;
    return l;
}

// Random kernel element of the trace constraint over the given monomials.
std::vector<Poly> constrained(const PureLayout& l, const std::vector<Exponent>& mons, Rng& rng, double density) {
    const int nm = static_cast<int>(mons.size());
    const int cols = nm * static_cast<int>(l.pairs.size());
    auto unknown = [&](int i, int j) -> int {
        if (i > j) std::swap(i, j);
        for (size_t k = 0; k < l.pairs.size(); ++k)
            if (l.pairs[k] == std::make_pair(i, j)) return static_cast<int>(k);
        return -1;
    };
    std::map<std::pair<int, Exponent>, size_t> eq;
    std::vector<std::vector<mpq_class>> rows;
    for (int i = 0; i < l.rows; ++i)
        for (int j = 0; j < l.p; ++j) {
            const int u = unknown(i, j);
            if (u < 0) continue;
            const int yv = l.off + l.p + j;
            for (int m = 0; m < nm; ++m) {
                const int e = mons[static_cast<size_t>(m)][static_cast<size_t>(yv)];
                if (e == 0) continue;
                Exponent t = mons[static_cast<size_t>(m)];
                --t[static_cast<size_t>(yv)];
                auto key = std::make_pair(i, t);
                auto it = eq.find(key);
                if (it == eq.end()) {
                    it = eq.emplace(key, rows.size()).first;
                    rows.emplace_back(static_cast<size_t>(cols), mpq_class(0));
                }
                rows[it->second][static_cast<size_t>(u * nm + m)] += e;
            }
        }
    const auto kernel = exact_kernel(rows, cols);
    std::vector<mpq_class> v(static_cast<size_t>(cols), mpq_class(0));
    bool any = false;
    while (!any) {
        for (const auto& b : kernel) {
            if (rng.uniform(0, 1) > density) continue;
            int c = 0;
            while (c == 0) c = rng.integer(-3, 3);
            for (int k = 0; k < cols; ++k) v[static_cast<size_t>(k)] += c * b[static_cast<size_t>(k)];
            any = true;
        }
        if (kernel.empty()) break;
    }
    std::vector<Poly> out;
    for (size_t u = 0; u < l.pairs.size(); ++u) {
        Poly f(l.arity);
        for (int m = 0; m < nm; ++m) f.add_term(mons[static_cast<size_t>(m)], v[u * static_cast<size_t>(nm) + static_cast<size_t>(m)]);
        out.push_back(std::move(f));
    }
    return out;
}

// Re and Im of (a + i b)^k as polynomials.
std::pair<Poly, Poly> complex_power(int arity, int a, int b, int k) {
    Poly re(arity), im(arity);
    mpz_class binom = 1;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        Exponent e(static_cast<size_t>(arity), 0);
        e[static_cast<size_t>(a)] += k - j;
        e[static_cast<size_t>(b)] += j;
        const mpq_class c(binom);
        switch (j % 4) {
            case 0: re.add_term(e, c); break;
            case 1: im.add_term(e, c); break;
            case 2: re.add_term(e, -c); break;
            case 3: im.add_term(e, -c); break;
        }
    }
    return {re, im};
}

// Harmonic in the variables lap, with coefficients polynomial in the remaining ones.
Poly harmonic_poly(int arity, const std::vector<int>& lap, Rng& rng) {
    std::vector<int> passive;
    for (int v = 0; v < arity; ++v)
        if (std::find(lap.begin(), lap.end(), v) == lap.end()) passive.push_back(v);
    auto coefficient = [&]() {
        Poly c = Poly::constant(arity, rng.integer(-3, 3));
        if (passive.empty()) return c;
        Poly q = random_poly(static_cast<int>(passive.size()), 1, 2, rng, 2, 0.5);
        return c + q.embed(arity, passive);
    };
    Poly h(arity);
    for (size_t a = 0; a < lap.size(); ++a) h = h + coefficient() * Poly::variable(arity, lap[a]);
    for (size_t a = 0; a < lap.size(); ++a)
        for (size_t b = a + 1; b < lap.size(); ++b)
            for (int k = 2; k <= 3; ++k) {
                auto [re, im] = complex_power(arity, lap[a], lap[b], k);
                h = h + coefficient() * re + coefficient() * im;
            }
    if (lap.size() >= 3) {
        Poly t = Poly::constant(arity, 1);
        for (int i = 0; i < 3; ++i) t = t * Poly::variable(arity, lap[static_cast<size_t>(i)]);
        h = h + coefficient() * t;
    }
    return h;
}

Poly square_norm(int arity, const std::vector<int>& vars) {
    Poly s(arity);
    for (int v : vars) s = s + Poly::variable(arity, v) * Poly::variable(arity, v);
    return s;
}

}  // namespace

std::vector<Poly> trace_free_functions(const FamilyTag& tag, int degree, Rng& rng) {
    const PureLayout l = layout(tag);
    auto set = MonomialSet::get(l.arity, degree);
    std::vector<Exponent> mons(set->mons.begin() + 1, set->mons.end());
    return constrained(l, mons, rng, 0.25);
}

std::vector<Poly> quadratic_family(int p, Rng& rng) {
    const PureLayout l = layout({Family::PUREODD, p});
    std::vector<Exponent> mons;
    for (int k = 0; k < p; ++k)
        for (int m = k; m < p; ++m) {
            Exponent e(static_cast<size_t>(l.arity), 0);
            ++e[static_cast<size_t>(1 + p + k)];
            ++e[static_cast<size_t>(1 + p + m)];
            mons.push_back(e);
        }
    Exponent z2(static_cast<size_t>(l.arity), 0);
    z2[0] = 2;
    mons.push_back(z2);
    return constrained(l, mons, rng, 0.8);
}

std::vector<FreeFunction> as_functions(const std::vector<Poly>& polys) {
    std::vector<FreeFunction> out;
    for (const auto& p : polys) out.push_back(FreeFunction::polynomial(p));
    return out;
}

std::vector<FreeFunction> sample_functions(const FamilyTag& tag, Rng& rng) {
    const auto [count, arity] = family_arity(tag);
    switch (tag.family) {
        case Family::PUREODD:
        case Family::PUREEVEN:
        case Family::M33NULL: return as_functions(trace_free_functions(tag, 3, rng));
        case Family::M22DEG: {
            Poly f = random_poly(4, 2, 4, rng, 3, 0.4);
            // Keep a genuine quartic in y.
            f = f + random_poly(2, 4, 4, rng, 3, 0.8).embed(4, {2, 3}) + Poly::monomial({0, 0, 4, 0}, 1);
            return {FreeFunction::polynomial(f)};
        }
        case Family::M33GEN: {
            // H = I + a e1 e2^T + b e3 e1^T + c e3 e2^T keeps det H = 1.
            Poly f(6);
            for (int i = 0; i < 3; ++i) {
                Exponent e(6, 0);
                e[static_cast<size_t>(i)] = e[static_cast<size_t>(3 + i)] = 1;
                f.add_term(e, 1);
            }
            f = f + random_poly(2, 2, 4, rng, 2, 0.5).embed(6, {0, 4}) + random_poly(2, 2, 4, rng, 2, 0.5).embed(6, {2, 3}) +
                random_poly(2, 2, 4, rng, 2, 0.5).embed(6, {2, 4});
            return {FreeFunction::polynomial(f)};
        }
        case Family::M101: throw MetricError("M101 takes a fiber family, not a function list");
        default: {
            std::vector<FreeFunction> out;
            for (int i = 0; i < count; ++i) out.push_back(FreeFunction::polynomial(random_poly(arity, 1, 3, rng, 3, 0.5)));
            return out;
        }
    }
}

std::vector<FreeFunction> harmonic_functions(const FamilyTag& tag, Rng& rng) {
    switch (tag.family) {
        case Family::M31: return {FreeFunction::polynomial(harmonic_poly(3, {0, 1}, rng))};
        case Family::M41DEG: return {FreeFunction::polynomial(harmonic_poly(4, {1, 2, 3}, rng))};
        case Family::M51NULL: return {FreeFunction::polynomial(harmonic_poly(5, {0, 1, 2, 3}, rng))};
        case Family::M22GEN: {
            Poly f = random_poly(2, 1, 3, rng).embed(3, {0, 2}) + random_poly(2, 1, 3, rng).embed(3, {1, 2});
            return {FreeFunction::polynomial(f)};
        }
        default: throw MetricError(family_name(tag) + " has no harmonicity criterion");
    }
}

std::vector<FreeFunction> witness_functions(const FamilyTag& tag) {
    switch (tag.family) {
        case Family::M31: return {FreeFunction::polynomial(square_norm(3, {0, 1}))};
        case Family::M41DEG: return {FreeFunction::polynomial(square_norm(4, {1, 2, 3}))};
        case Family::M51NULL: return {FreeFunction::polynomial(square_norm(5, {0, 1, 2, 3}))};
        case Family::M22GEN: return {FreeFunction::polynomial(Poly::monomial({1, 1, 0}, 1))};
        default: throw MetricError(family_name(tag) + " has no harmonicity criterion");
    }
}

}  // namespace spinlab
