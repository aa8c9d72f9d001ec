#include "spinlab/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

namespace spinlab {

namespace {

// Orthonormal basis of the span without rescaling the inputs, so roundoff-sized members stay negligible.
Mat raw_span(const std::vector<Mat>& mats, const RankOptions& opt) {
    if (mats.empty()) return Mat();
    Mat cols(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
    for (size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten(mats[i]);
    return range_basis(cols, opt);
}

}  // namespace

Mat bracket_closure(const std::vector<Mat>& mats, int rows, int* iterations, const RankOptions& opt, int max_iter) {
    Mat q = raw_span(mats, opt);
    int it = 0;
    while (q.cols() > 0 && it < max_iter) {
        ++it;
        std::vector<Mat> all;
        for (Eigen::Index i = 0; i < q.cols(); ++i) all.push_back(unflatten(q.col(i), rows, rows));
        const size_t base = all.size();
        for (size_t i = 0; i < base; ++i)
            for (size_t j = i + 1; j < base; ++j) all.push_back(commutator(all[i], all[j]));
        Mat next = raw_span(all, opt);
        const bool grew = next.cols() > q.cols();
        q = next;
        if (!grew) break;
    }
    if (iterations) *iterations = it;
    return q;
}

HolonomyEstimate holonomy_span(const CoordinateMetric& m, const std::vector<Vec>& points, const RankOptions& opt) {
    HolonomyEstimate h;
    const Mat stab = span_basis(m.stabilizer);
    h.reference = static_cast<int>(stab.cols());
    double biggest = 0;
    for (const Vec& x : points)
        for (const Mat& o : frame_curvature(m, x)) {
            biggest = std::max(biggest, o.norm());
            h.samples.push_back(o);
        }
    if (biggest < 1e-12) {
        h.span = Mat(m.n * m.n, 0);
        return h;
    }
    std::vector<Mat> kept;
    for (const Mat& o : h.samples) {
        h.outside = std::max(h.outside, residual_from_span(stab, flatten(o)) / biggest);
        if (o.norm() > 1e-12 * biggest) kept.push_back(o);
    }
    h.span = bracket_closure(kept, m.n, &h.iterations, opt);
    h.dimension = static_cast<int>(h.span.cols());
    return h;
}

int modular_rank(std::vector<std::vector<long long>> rows) {
    constexpr std::uint64_t P = 2147483647ULL;
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    std::vector<std::vector<std::uint64_t>> a(rows.size(), std::vector<std::uint64_t>(cols));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged integer matrix");
        for (size_t j = 0; j < cols; ++j) {
            long long v = rows[i][j] % static_cast<long long>(P);
            a[i][j] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<long long>(P) : v);
        }
    }
    auto pw = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= P;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return r;
    };
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < a.size(); ++c) {
        size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        const std::uint64_t inv = pw(a[rank][c], P - 2);
        for (size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv % P;
        const auto& pr = a[rank];
        for (size_t i = rank + 1; i < a.size(); ++i) {
            const std::uint64_t f = a[i][c];
            if (f == 0) continue;
            auto& r = a[i];
            for (size_t j = c; j < cols; ++j)
                if (pr[j]) r[j] = (r[j] + (P - f) * pr[j]) % P;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

std::optional<std::vector<std::vector<mpq_class>>> rational_span(const std::vector<Mat>& mats, int max_den) {
    const Mat q = span_basis(mats);
    const int d = static_cast<int>(q.cols());
    const int len = static_cast<int>(q.rows());
    Mat r = q.transpose();
    // Reduced row echelon form, leftmost pivots first.
    int row = 0;
    for (int c = 0; c < len && row < d; ++c) {
        Eigen::Index best;
        double mx = r.col(c).segment(row, d - row).cwiseAbs().maxCoeff(&best);
        if (mx < 1e-9) continue;
        r.row(row).swap(r.row(row + static_cast<int>(best)));
        r.row(row) /= r(row, c);
        for (int i = 0; i < d; ++i)
            if (i != row) r.row(i) -= r(i, c) * r.row(row);
        ++row;
    }
    if (row != d) return std::nullopt;
    std::vector<std::vector<mpq_class>> out;
    for (int i = 0; i < d; ++i) {
        std::vector<mpq_class> v(static_cast<size_t>(len));
        Vec back(len);
        for (int j = 0; j < len; ++j) {
            const double x = r(i, j);
            bool found = false;
            for (int den = 1; den <= max_den && !found; ++den) {
                const double num = std::round(x * den);
                if (std::abs(x * den - num) < 1e-8 * den) {
                    v[static_cast<size_t>(j)] = mpq_class(static_cast<long>(num), den);
                    v[static_cast<size_t>(j)].canonicalize();
                    found = true;
                }
            }
            if (!found) return std::nullopt;
            back(j) = v[static_cast<size_t>(j)].get_d();
        }
        if (residual_from_span(q, back) > 1e-9 * back.norm()) return std::nullopt;
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// Bianchi map rows for generators h (n x n) with coefficient type T.
template <class T, class Get>
std::vector<std::vector<T>> bianchi_rows(int n, int d, Get h) {
    const int pairs = n * (n - 1) / 2;
    std::vector<std::vector<int>> pidx(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    int k = 0;
    for (int c = 0; c < n; ++c)
        for (int e = c + 1; e < n; ++e) pidx[static_cast<size_t>(c)][static_cast<size_t>(e)] = k++;
    auto pi = [&](int a, int b) { return pidx[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
    std::vector<std::vector<T>> rows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int e = c + 1; e < n; ++e) {
                    std::vector<T> row(static_cast<size_t>(d * pairs), T(0));
                    for (int A = 0; A < d; ++A) {
                        const size_t o = static_cast<size_t>(A * pairs);
                        row[o + static_cast<size_t>(pi(c, e))] += h(A, a, b);
                        row[o + static_cast<size_t>(pi(b, e))] -= h(A, a, c);
                        row[o + static_cast<size_t>(pi(b, c))] += h(A, a, e);
                    }
                    rows.push_back(std::move(row));
                }
    return rows;
}

}  // namespace

CurvatureSpace curvature_space(const std::vector<Mat>& algebra, bool integer_check) {
    CurvatureSpace out;
    if (algebra.empty()) throw std::invalid_argument("empty algebra");
    const int n = static_cast<int>(algebra[0].rows());
    out.n = n;
    const Mat q = span_basis(algebra);
    const int d = static_cast<int>(q.cols());
    out.algebra_dim = d;
    const int pairs = n * (n - 1) / 2;
    if (d == 0 || n < 3) {
        out.dimension = d * pairs;
        return out;
    }
    auto rows = bianchi_rows<double>(n, d, [&](int A, int a, int b) { return q(a + b * n, A); });
    Mat b(static_cast<Eigen::Index>(rows.size()), d * pairs);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < d * pairs; ++j) b(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(j)];
    out.float_rank = guarded_rank(b);
    out.dimension = d * pairs - out.float_rank;
    if (!integer_check) return out;

    auto basis = rational_span(algebra);
    if (!basis) return out;
    out.exact_basis = true;
    std::vector<std::vector<long long>> ints;
    for (const auto& v : *basis) {
        mpz_class l = 1;
        for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<long long> iv;
        for (const auto& x : v) {
            mpz_class num = x.get_num() * (l / x.get_den());
            iv.push_back(num.get_si());
        }
        ints.push_back(std::move(iv));
    }
    auto irows = bianchi_rows<long long>(n, d, [&](int A, int a, int b) {
        return ints[static_cast<size_t>(A)][static_cast<size_t>(a + b * n)];
    });
    out.modular_rank = modular_rank(std::move(irows));
    return out;
}

int curvature_space_dim(const std::vector<Mat>& algebra) { return curvature_space(algebra, false).dimension; }

}  // namespace spinlab
