#include "spinlab/clifford.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spinlab {

namespace {

Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Mat J2() {
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    return j;
}

Quaternion qunit(int k) {
    switch (k) {
        case 0: return Quaternion(0, 1);
        case 1: return Quaternion(0, 0, 1);
        default: return Quaternion(0, 0, 0, 1);
    }
}

Mat clifford_map(const Octonion& x) {
    Mat c = oct_conj_matrix();
    Mat m = Mat::Zero(16, 16);
    m.block(0, 8, 8, 8) = c * oct_right(x);
    m.block(8, 0, 8, 8) = -c * oct_left(x);
    return m;
}

// Generators squaring to -1 for Cl(k, 0), k <= 8.
std::vector<Mat> base_positive(int k) {
    std::vector<Mat> g;
    if (k == 0) return g;
    if (k == 1) return {J2()};
    if (k == 2) return {quat_left(qunit(0)), quat_left(qunit(1))};
    if (k == 3) {
        for (int a = 0; a < 3; ++a) {
            Mat l = quat_left(qunit(a));
            g.push_back(block_diag({l, Mat(-l)}));
        }
        return g;
    }
    if (k <= 6) {
        for (int a = 1; a <= k; ++a) g.push_back(oct_left(Octonion::unit(a)));
        return g;
    }
    if (k == 7) {
        for (int a = 1; a <= 7; ++a) {
            Mat l = oct_left(Octonion::unit(a));
            g.push_back(block_diag({l, Mat(-l)}));
        }
        return g;
    }
    if (k == 8) {
        for (int a = 0; a < 8; ++a) g.push_back(clifford_map(Octonion::unit(a)));
        return g;
    }
    throw std::invalid_argument("base realization needs k <= 8");
}

CliffordModel make(int p, int q, std::vector<Mat> pos, std::vector<Mat> neg) {
    CliffordModel m;
    m.p = p;
    m.q = q;
    for (auto& g : pos) {
        m.gens.push_back(std::move(g));
        m.eta.push_back(1);
    }
    for (auto& g : neg) {
        m.gens.push_back(std::move(g));
        m.eta.push_back(-1);
    }
    return m;
}

CliffordModel build(int p, int q) {
    if (q == 0 && p <= 8) return make(p, 0, base_positive(p), {});
    if (p == 0 && q == 1) {
        Mat d(2, 2);
        d << 1, 0, 0, -1;
        return make(0, 1, {}, {d});
    }
    if (p >= 1 && q >= 1) {
        CliffordModel base = build(p - 1, q - 1);
        Mat e1 = J2();
        Mat e2(2, 2);
        e2 << 0, 1, 1, 0;
        Mat gamma = e1 * e2;
        Mat id = base.identity();
        std::vector<Mat> pos, neg;
        for (size_t i = 0; i < base.gens.size(); ++i) {
            Mat g = kron(base.gens[i], gamma);
            (base.eta[i] > 0 ? pos : neg).push_back(g);
        }
        pos.push_back(kron(id, e1));
        neg.push_back(kron(id, e2));
        return make(p, q, pos, neg);
    }
    if (q == 0) {
        CliffordModel base = build(p - 8, 0);
        std::vector<Mat> eight = base_positive(8);
        Mat omega = Mat::Identity(16, 16);
        for (const auto& g : eight) omega = omega * g;
        Mat id = base.identity();
        std::vector<Mat> pos;
        for (const auto& g : base.gens) pos.push_back(kron(g, omega));
        for (const auto& g : eight) pos.push_back(kron(id, g));
        return make(p, 0, pos, {});
    }
    // p == 0, q >= 2: f_i = a_i b for i < q and f_q = b, from Cl(q-1, 1).
    CliffordModel base = build(q - 1, 1);
    const Mat& b = base.gens.back();
    std::vector<Mat> neg;
    for (int i = 0; i < q - 1; ++i) neg.push_back(base.gens[static_cast<size_t>(i)] * b);
    neg.push_back(b);
    return make(0, q, {}, neg);
}

}  // namespace

Mat CliffordModel::monomial(unsigned mask) const {
    Mat r = identity();
    for (int i = 0; i < n(); ++i)
        if (mask & (1u << i)) r = r * gens[static_cast<size_t>(i)];
    return r;
}

std::vector<Mat> CliffordModel::monomials() const {
    std::vector<Mat> out;
    for (unsigned mask = 0; mask < (1u << n()); ++mask) out.push_back(monomial(mask));
    return out;
}

Mat CliffordModel::vector(const Vec& v) const {
    Mat r = Mat::Zero(size(), size());
    for (int i = 0; i < n(); ++i) r += v(i) * gens[static_cast<size_t>(i)];
    return r;
}

double CliffordModel::relation_residual() const {
    double worst = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) {
            Mat lhs = gens[static_cast<size_t>(i)] * gens[static_cast<size_t>(j)] +
                      gens[static_cast<size_t>(j)] * gens[static_cast<size_t>(i)];
            if (i == j) lhs += 2.0 * eta[static_cast<size_t>(i)] * identity();
            worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
        }
    return worst;
}

double CliffordModel::form(const Vec& v, const Vec& w) const {
    double s = 0;
    for (int i = 0; i < n(); ++i) s += eta[static_cast<size_t>(i)] * v(i) * w(i);
    return s;
}

CliffordModel build_algebra(int p, int q) {
    if (p < 0 || q < 0 || p + q > 11) throw std::invalid_argument("build_algebra needs 0 <= p + q <= 11");
    return build(p, q);
}

std::string CliffordClass::str() const {
    std::ostringstream os;
    os << ring_name(ring) << "(" << size << ")";
    if (summands == 2) os << "+" << ring_name(ring) << "(" << size << ")";
    return os.str();
}

int center_dimension(const std::vector<Mat>& monomials, const std::vector<Mat>& generators) {
    if (generators.empty()) return static_cast<int>(monomials.size());
    const Eigen::Index block = monomials[0].size();
    Mat c(block * static_cast<Eigen::Index>(generators.size()), static_cast<Eigen::Index>(monomials.size()));
    for (size_t j = 0; j < monomials.size(); ++j)
        for (size_t k = 0; k < generators.size(); ++k)
            c.block(static_cast<Eigen::Index>(k) * block, static_cast<Eigen::Index>(j), block, 1) =
                flatten(commutator(monomials[j], generators[k]));
    return static_cast<int>(kernel_basis(c).cols());
}

CliffordClass classify_span(const std::vector<Mat>& monomials, const std::vector<Mat>& generators) {
    const int dim = static_cast<int>(monomials.size());
    const int N = static_cast<int>(monomials[0].rows());
    const Mat id = Mat::Identity(N, N);

    // Normalized trace form sign count.
    int plus = 0, minus = 0;
    for (const auto& e : monomials) {
        Mat sq = e * e;
        if ((sq - id).cwiseAbs().maxCoeff() < 1e-9) ++plus;
        else if ((sq + id).cwiseAbs().maxCoeff() < 1e-9) ++minus;
        else throw std::runtime_error("monomial does not square to a scalar");
    }
    const int s = plus - minus;

    Mat cols(monomials[0].size(), dim);
    for (int j = 0; j < dim; ++j) cols.col(j) = flatten(monomials[static_cast<size_t>(j)]);
    if (guarded_rank(cols) != dim) throw std::runtime_error("monomials are not independent");

    const Eigen::Index block = monomials[0].size();
    Mat cmat(block * static_cast<Eigen::Index>(std::max<size_t>(generators.size(), 1)), dim);
    cmat.setZero();
    for (int j = 0; j < dim; ++j)
        for (size_t k = 0; k < generators.size(); ++k)
            cmat.block(static_cast<Eigen::Index>(k) * block, j, block, 1) =
                flatten(commutator(monomials[static_cast<size_t>(j)], generators[k]));
    Mat ker = kernel_basis(cmat);

    CliffordClass out;
    auto isqrt = [](int v) {
        int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v))));
        if (r * r != v) throw std::runtime_error("dimension is not a square");
        return r;
    };
    if (ker.cols() == 1) {
        if (s > 0) {
            out.ring = Ring::R;
            out.size = isqrt(dim);
            if (s != out.size) throw std::runtime_error("trace signature mismatch for real type");
        } else {
            out.ring = Ring::H;
            out.size = isqrt(dim / 4);
            if (s != -2 * out.size) throw std::runtime_error("trace signature mismatch for quaternion type");
        }
        return out;
    }
    if (ker.cols() != 2) throw std::runtime_error("center dimension not 1 or 2");

    // Central element orthogonal to the identity.
    Mat omega = Mat::Zero(N, N);
    Vec idflat = flatten(id) / std::sqrt(static_cast<double>(N));
    Vec best;
    for (Eigen::Index j = 0; j < 2; ++j) {
        Mat z = Mat::Zero(N, N);
        for (int i = 0; i < dim; ++i) z += ker(i, j) * monomials[static_cast<size_t>(i)];
        Vec zf = flatten(z);
        zf -= idflat * idflat.dot(zf);
        if (best.size() == 0 || zf.norm() > best.norm()) best = zf;
    }
    omega = unflatten(best, N, N);
    Mat sq = omega * omega;
    double lam = sq.trace() / N;
    omega /= std::sqrt(std::abs(lam));
    sq = omega * omega;
    if (lam < 0) {
        if ((sq + id).cwiseAbs().maxCoeff() > 1e-8) throw std::runtime_error("central element is not a complex unit");
        out.ring = Ring::C;
        out.size = isqrt(dim / 2);
        if (s != 0) throw std::runtime_error("trace signature mismatch for complex type");
        return out;
    }
    if ((sq - id).cwiseAbs().maxCoeff() > 1e-8) throw std::runtime_error("central element is not an involution");
    Mat e1 = 0.5 * (id + omega), e2 = 0.5 * (id - omega);
    if ((e1 * e1 - e1).norm() > 1e-8 || (e2 * e2 - e2).norm() > 1e-8 || (e1 * e2).norm() > 1e-8 ||
        e1.norm() < 1e-8 || e2.norm() < 1e-8)
        throw std::runtime_error("central idempotents fail");
    out.summands = 2;
    if (s > 0) {
        out.ring = Ring::R;
        out.size = isqrt(dim / 2);
        if (s != 2 * out.size) throw std::runtime_error("trace signature mismatch for split real type");
    } else {
        out.ring = Ring::H;
        out.size = isqrt(dim / 8);
        if (s != -4 * out.size) throw std::runtime_error("trace signature mismatch for split quaternion type");
    }
    return out;
}

CliffordClass classify_model(const CliffordModel& m) {
    if (m.n() > 8) throw std::invalid_argument("classification limited to p + q <= 8");
    if (m.n() == 0) return CliffordClass{};
    return classify_span(m.monomials(), m.gens);
}

CliffordClass clifford_table(int p, int q) {
    const int n = p + q;
    const int r = (((p - q) % 8) + 8) % 8;
    const int dim = 1 << n;
    CliffordClass c;
    auto root = [](int v) { return static_cast<int>(std::lround(std::sqrt(static_cast<double>(v)))); };
    switch (r) {
        case 0:
        case 6: c.ring = Ring::R; c.size = root(dim); break;
        case 1:
        case 5: c.ring = Ring::C; c.size = root(dim / 2); break;
        case 2:
        case 4: c.ring = Ring::H; c.size = root(dim / 4); break;
        case 3: c.ring = Ring::H; c.summands = 2; c.size = root(dim / 8); break;
        case 7: c.ring = Ring::R; c.summands = 2; c.size = root(dim / 2); break;
    }
    return c;
}

std::vector<Mat> even_monomials(const CliffordModel& m) {
    std::vector<Mat> out;
    for (unsigned mask = 0; mask < (1u << m.n()); ++mask)
        if (__builtin_popcount(mask) % 2 == 0) out.push_back(m.monomial(mask));
    return out;
}

std::vector<Mat> even_generators(const CliffordModel& m) {
    std::vector<Mat> out;
    for (int k = 1; k < m.n(); ++k) out.push_back(m.gens[0] * m.gens[static_cast<size_t>(k)]);
    return out;
}

Vec twisted_reflection(const CliffordModel& m, const Vec& v, const Vec& w) {
    double vv = m.form(v, v);
    if (std::abs(vv) < 1e-12) throw std::invalid_argument("twisted reflection needs a non-null vector");
    Mat V = m.vector(v);
    Mat Vinv = -V / vv;  // V^2 = -(v.v) 1
    Mat U = -V * m.vector(w) * Vinv;
    Vec out(m.n());
    for (int i = 0; i < m.n(); ++i) out(i) = (U * m.inverse_gen(i)).trace() / m.size();
    if ((m.vector(out) - U).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, U.cwiseAbs().maxCoeff()))
        throw std::runtime_error("twisted reflection left the generating subspace");
    return out;
}

Mat reflection_matrix(const CliffordModel& m, const Vec& v) {
    Mat r(m.n(), m.n());
    for (int j = 0; j < m.n(); ++j) r.col(j) = twisted_reflection(m, v, Vec::Unit(m.n(), j));
    return r;
}

Mat irreducible_subspace(const std::vector<Mat>& gens, int ambient, Rng& rng) {
    Mat x = rng.normal_mat(ambient, ambient);
    x = 0.5 * (x + x.transpose());
    for (const auto& g : gens) {
        Mat ginv = g.inverse();
        x = 0.5 * (x + g * x * ginv);
    }
    x = 0.5 * (x + x.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    const Vec& ev = es.eigenvalues();
    double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int k = 1;
    while (k < ev.size() && std::abs(ev(k) - ev(0)) < 1e-8 * spread) ++k;
    Mat u = es.eigenvectors().leftCols(k);
    for (const auto& g : gens) {
        Mat gu = g * u;
        if ((gu - u * (u.transpose() * gu)).cwiseAbs().maxCoeff() > 1e-8)
            throw std::runtime_error("commutant eigenspace is not invariant");
    }
    return u;
}

Mat SpinAlgebraBasis::vector_action(int k) const {
    const int n = p + q;
    Mat m = Mat::Zero(n, n);
    auto [i, j] = pairs[static_cast<size_t>(k)];
    m(i, j) = -2.0 * eta[static_cast<size_t>(j)];
    m(j, i) = 2.0 * eta[static_cast<size_t>(i)];
    return m;
}

SpinAlgebraBasis spin_representation(int p, int q, std::uint64_t seed) {
    CliffordModel m = build_algebra(p, q);
    Rng rng(seed);
    SpinAlgebraBasis out;
    out.p = p;
    out.q = q;
    out.eta = m.eta;
    Mat w = irreducible_subspace(m.gens, m.size(), rng);
    out.module_dim = static_cast<int>(w.cols());
    const int r = (((p - q) % 8) + 8) % 8;
    Mat s = w;
    if (r == 1 || r == 2) {
        std::vector<Mat> ev;
        for (const auto& g : even_generators(m)) ev.push_back(w.transpose() * g * w);
        Mat sub = irreducible_subspace(ev, static_cast<int>(w.cols()), rng);
        s = w * sub;
        out.halved = true;
    }
    out.embed = s;
    out.spinor_dim = static_cast<int>(s.cols());
    for (int i = 0; i < m.n(); ++i)
        for (int j = i + 1; j < m.n(); ++j) {
            out.pairs.emplace_back(i, j);
            out.basis.push_back(s.transpose() * m.gens[static_cast<size_t>(i)] * m.gens[static_cast<size_t>(j)] * s);
        }
    return out;
}

}  // namespace spinlab
