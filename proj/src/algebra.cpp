#include "spinlab/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spinlab {

double Quaternion::operator[](int i) const {
    switch (i) {
        case 0: return z0.real();
        case 1: return z0.imag();
        case 2: return z1.real();
        case 3: return z1.imag();
        default: throw std::out_of_range("quaternion index");
    }
}

double Quaternion::norm() const { return std::sqrt(norm2()); }

Mat quat_left(const Quaternion& q) {
    Mat m(4, 4);
    for (int j = 0; j < 4; ++j) {
        Quaternion e;
        if (j == 0) e = Quaternion(1);
        else if (j == 1) e = Quaternion(0, 1);
        else if (j == 2) e = Quaternion(0, 0, 1);
        else e = Quaternion(0, 0, 0, 1);
        Quaternion p = q * e;
        for (int i = 0; i < 4; ++i) m(i, j) = p[i];
    }
    return m;
}

Mat quat_right(const Quaternion& q) {
    Mat m(4, 4);
    for (int j = 0; j < 4; ++j) {
        Quaternion e;
        if (j == 0) e = Quaternion(1);
        else if (j == 1) e = Quaternion(0, 1);
        else if (j == 2) e = Quaternion(0, 0, 1);
        else e = Quaternion(0, 0, 0, 1);
        Quaternion p = e * q;
        for (int i = 0; i < 4; ++i) m(i, j) = p[i];
    }
    return m;
}

std::string octonion_table_checksum() {
    // FNV-1a over the signed table entries.
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& row : kOctonionTable)
        for (auto v : row) {
            h ^= static_cast<std::uint8_t>(v);
            h *= 1099511628211ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Octonion Octonion::from_vec(const Vec& v, int off) {
    Octonion o;
    for (int i = 0; i < 8; ++i) o.c[static_cast<size_t>(i)] = v(off + i);
    return o;
}

Octonion Octonion::from_pair(const Quaternion& a, const Quaternion& b) {
    Octonion o;
    for (int i = 0; i < 4; ++i) {
        o.c[static_cast<size_t>(i)] = a[i];
        o.c[static_cast<size_t>(i + 4)] = b[i];
    }
    return o;
}

Vec Octonion::vec() const { return Eigen::Map<const Vec>(c.data(), 8); }

Octonion Octonion::conj() const {
    Octonion o = *this;
    for (int i = 1; i < 8; ++i) o.c[static_cast<size_t>(i)] = -o.c[static_cast<size_t>(i)];
    return o;
}

double Octonion::norm2() const {
    double s = 0;
    for (double v : c) s += v * v;
    return s;
}

double Octonion::norm() const { return std::sqrt(norm2()); }

double Octonion::dot(const Octonion& o) const {
    double s = 0;
    for (size_t i = 0; i < 8; ++i) s += c[i] * o.c[i];
    return s;
}

Octonion Octonion::operator+(const Octonion& o) const {
    Octonion r;
    for (size_t i = 0; i < 8; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

Octonion Octonion::operator-(const Octonion& o) const {
    Octonion r;
    for (size_t i = 0; i < 8; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

Octonion Octonion::operator-() const {
    Octonion r;
    for (size_t i = 0; i < 8; ++i) r.c[i] = -c[i];
    return r;
}

Octonion Octonion::operator*(double s) const {
    Octonion r;
    for (size_t i = 0; i < 8; ++i) r.c[i] = c[i] * s;
    return r;
}

Octonion Octonion::operator*(const Octonion& o) const {
    Octonion r;
    for (size_t i = 0; i < 8; ++i) {
        if (c[i] == 0.0) continue;
        for (size_t j = 0; j < 8; ++j) {
            int t = kOctonionTable[i][j];
            size_t k = static_cast<size_t>(std::abs(t) - 1);
            r.c[k] += (t > 0 ? 1.0 : -1.0) * c[i] * o.c[j];
        }
    }
    return r;
}

Octonion octonion_mul(const Octonion& x, const Octonion& y) { return x * y; }

Octonion random_octonion(Rng& rng) { return Octonion::from_vec(rng.normal_vec(8)); }

Mat oct_left(const Octonion& x) {
    Mat m(8, 8);
    for (int j = 0; j < 8; ++j) m.col(j) = (x * Octonion::unit(j)).vec();
    return m;
}

Mat oct_right(const Octonion& x) {
    Mat m(8, 8);
    for (int j = 0; j < 8; ++j) m.col(j) = (Octonion::unit(j) * x).vec();
    return m;
}

Mat oct_conj_matrix() {
    Mat c = -Mat::Identity(8, 8);
    c(0, 0) = 1.0;
    return c;
}

const char* ring_name(Ring r) {
    switch (r) {
        case Ring::R: return "R";
        case Ring::C: return "C";
        case Ring::H: return "H";
    }
    return "?";
}

int ring_dim(Ring r) {
    switch (r) {
        case Ring::R: return 1;
        case Ring::C: return 2;
        case Ring::H: return 4;
    }
    return 0;
}

namespace {

bool in_ring(Ring r, const Quaternion& q) {
    if (r == Ring::H) return true;
    if (r == Ring::C) return q.is_complex();
    return q.is_real();
}

}  // namespace

RingMatrix::RingMatrix(Ring ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {}

RingMatrix RingMatrix::identity(Ring ring, int n) {
    RingMatrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Quaternion(1));
    return m;
}

void RingMatrix::set(int i, int j, const Quaternion& q) {
    if (!in_ring(ring_, q)) throw std::invalid_argument("entry outside matrix ring");
    e_[static_cast<size_t>(i * cols_ + j)] = q;
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
    if (cols_ != o.rows_ || ring_ != o.ring_) throw std::invalid_argument("ring matrix shape mismatch");
    RingMatrix r(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            Quaternion s;
            for (int k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
            r.e_[static_cast<size_t>(i * r.cols_ + j)] = s;
        }
    return r;
}

RingMatrix RingMatrix::operator+(const RingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_) throw std::invalid_argument("ring matrix shape mismatch");
    RingMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

RingMatrix RingMatrix::operator-(const RingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_) throw std::invalid_argument("ring matrix shape mismatch");
    RingMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

RingMatrix RingMatrix::scale_right(const Quaternion& q) const {
    if (!in_ring(ring_, q)) throw std::invalid_argument("scalar outside matrix ring");
    RingMatrix r = *this;
    for (auto& v : r.e_) v = v * q;
    return r;
}

RingMatrix RingMatrix::adjoint() const {
    RingMatrix r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.e_[static_cast<size_t>(j * rows_ + i)] = (*this)(i, j).conj();
    return r;
}

Mat RingMatrix::real_form() const {
    const int b = ring_dim(ring_);
    Mat m = Mat::Zero(rows_ * b, cols_ * b);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.block(i * b, j * b, b, b) = quat_left((*this)(i, j)).topLeftCorner(b, b);
    return m;
}

RingMatrix RingMatrix::from_real_form(Ring ring, const Mat& m) {
    const int b = ring_dim(ring);
    if (m.rows() % b != 0 || m.cols() % b != 0) throw std::invalid_argument("real form size not divisible");
    RingMatrix r(ring, static_cast<int>(m.rows()) / b, static_cast<int>(m.cols()) / b);
    for (int i = 0; i < r.rows_; ++i)
        for (int j = 0; j < r.cols_; ++j) {
            Quaternion q;
            if (b == 1) q = Quaternion(m(i, j));
            else if (b == 2) q = Quaternion(m(2 * i, 2 * j), m(2 * i + 1, 2 * j));
            else q = Quaternion(m(4 * i, 4 * j), m(4 * i + 1, 4 * j), m(4 * i + 2, 4 * j), m(4 * i + 3, 4 * j));
            r.e_[static_cast<size_t>(i * r.cols_ + j)] = q;
        }
    return r;
}

double RingMatrix::max_abs_diff(const RingMatrix& o) const {
    double d = 0;
    for (size_t i = 0; i < e_.size(); ++i) d = std::max(d, (e_[i] - o.e_[i]).norm());
    return d;
}

bool RingMatrix::is_hermitian(double tol) const {
    return rows_ == cols_ && max_abs_diff(adjoint()) <= tol;
}

double pfaffian(const Mat& a, double tol) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0) throw std::invalid_argument("pfaffian needs an even square matrix");
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > tol * scale) throw std::invalid_argument("pfaffian needs a skew matrix");
    std::vector<int> idx(static_cast<size_t>(a.rows()));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return pfaffian_expand<double>(a, idx);
}

double pfaffian(const RingMatrix& a, double tol) {
    if (a.ring() != Ring::R) throw std::invalid_argument("pfaffian needs a real matrix");
    return pfaffian(a.real_form(), tol);
}

cplx pfaffian_complex(const Eigen::MatrixXcd& a, double tol) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0) throw std::invalid_argument("pfaffian needs an even square matrix");
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > tol * scale) throw std::invalid_argument("pfaffian needs a skew matrix");
    std::vector<int> idx(static_cast<size_t>(a.rows()));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return pfaffian_expand<cplx>(a, idx);
}

double qdet2(const RingMatrix& m, double tol) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("qdet2 needs a 2x2 matrix");
    double scale = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) scale = std::max(scale, m(i, j).norm());
    if (!m.is_hermitian(tol * scale)) throw std::invalid_argument("qdet2 needs a Hermitian matrix");
    return m(0, 0).re() * m(1, 1).re() - m(0, 1).norm2();
}

}  // namespace spinlab
