#pragma once

#include "spinlab/linalg.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace spinlab {

using cplx = std::complex<double>;

// q = z0 + z1 j with z0, z1 complex, so q = a + b i + c j + d k for
// z0 = a + b i and z1 = c + d i.
class Quaternion {
public:
    cplx z0{0.0, 0.0};
    cplx z1{0.0, 0.0};

    Quaternion() = default;
    Quaternion(double a, double b = 0, double c = 0, double d = 0) : z0(a, b), z1(c, d) {}
    static Quaternion from_pair(cplx a, cplx b) {
        Quaternion q;
        q.z0 = a;
        q.z1 = b;
        return q;
    }
    static Quaternion from_vec(const Vec& v, int off = 0) {
        return Quaternion(v(off), v(off + 1), v(off + 2), v(off + 3));
    }

    double operator[](int i) const;
    std::array<double, 4> coeffs() const { return {z0.real(), z0.imag(), z1.real(), z1.imag()}; }
    double re() const { return z0.real(); }

    Quaternion conj() const { return from_pair(std::conj(z0), -z1); }
    double norm2() const { return std::norm(z0) + std::norm(z1); }
    double norm() const;
    bool is_complex() const { return z1 == cplx(0.0, 0.0); }
    bool is_real() const { return is_complex() && z0.imag() == 0.0; }

    Quaternion operator+(const Quaternion& o) const { return from_pair(z0 + o.z0, z1 + o.z1); }
    Quaternion operator-(const Quaternion& o) const { return from_pair(z0 - o.z0, z1 - o.z1); }
    Quaternion operator-() const { return from_pair(-z0, -z1); }
    Quaternion operator*(const Quaternion& o) const {
        return from_pair(z0 * o.z0 - z1 * std::conj(o.z1), z0 * o.z1 + z1 * std::conj(o.z0));
    }
    Quaternion operator*(double s) const { return from_pair(z0 * s, z1 * s); }
    Quaternion& operator+=(const Quaternion& o) {
        z0 += o.z0;
        z1 += o.z1;
        return *this;
    }
    bool operator==(const Quaternion& o) const { return z0 == o.z0 && z1 == o.z1; }
};

// 4x4 matrix of left multiplication by q on coordinates (1, i, j, k).
Mat quat_left(const Quaternion& q);
Mat quat_right(const Quaternion& q);

// Frozen multiplication table: entry (i, j) is ±(k+1) with e_i e_j = ±e_k.
extern const std::array<std::array<std::int8_t, 8>, 8> kOctonionTable;
std::string octonion_table_checksum();

class Octonion {
public:
    std::array<double, 8> c{};

    Octonion() = default;
    static Octonion unit(int i) {
        Octonion o;
        o.c[static_cast<size_t>(i)] = 1.0;
        return o;
    }
    static Octonion real(double r) {
        Octonion o;
        o.c[0] = r;
        return o;
    }
    static Octonion from_vec(const Vec& v, int off = 0);
    // (a, b) with a the first and b the second quaternion of the doubling.
    static Octonion from_pair(const Quaternion& a, const Quaternion& b);
    Vec vec() const;

    double operator[](int i) const { return c[static_cast<size_t>(i)]; }
    Octonion conj() const;
    double norm2() const;
    double norm() const;
    double dot(const Octonion& o) const;

    Octonion operator+(const Octonion& o) const;
    Octonion operator-(const Octonion& o) const;
    Octonion operator-() const;
    Octonion operator*(const Octonion& o) const;
    Octonion operator*(double s) const;
};

Octonion octonion_mul(const Octonion& x, const Octonion& y);
Octonion random_octonion(Rng& rng);

// Left and right multiplication matrices on R^8.
Mat oct_left(const Octonion& x);
Mat oct_right(const Octonion& x);
// Conjugation diag(1, -1, ..., -1).
Mat oct_conj_matrix();

enum class Ring { R, C, H };
const char* ring_name(Ring r);
int ring_dim(Ring r);

class RingMatrix {
public:
    RingMatrix(Ring ring, int rows, int cols);
    static RingMatrix identity(Ring ring, int n);
    static RingMatrix from_real_form(Ring ring, const Mat& m);

    Ring ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Quaternion& operator()(int i, int j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
    // Entry assignment, rejected if the value leaves the ring.
    void set(int i, int j, const Quaternion& q);

    RingMatrix operator*(const RingMatrix& o) const;
    RingMatrix operator+(const RingMatrix& o) const;
    RingMatrix operator-(const RingMatrix& o) const;
    // Quaternion scalars act on the right.
    RingMatrix scale_right(const Quaternion& q) const;
    RingMatrix adjoint() const;

    // Each entry becomes its 1x1, 2x2 or 4x4 left-multiplication block, so the
    // adjoint corresponds to the transpose.
    Mat real_form() const;
    double max_abs_diff(const RingMatrix& o) const;
    bool is_hermitian(double tol = 1e-12) const;

private:
    Ring ring_;
    int rows_, cols_;
    std::vector<Quaternion> e_;
};

// Pfaffian by expansion along the first row; the block-diagonal form
// diag(J, J, ...) with J = [[0, 1], [-1, 0]] has Pfaffian +1.
template <class T, class M>
T pfaffian_expand(const M& a, std::vector<int>& idx) {
    if (idx.empty()) return T(1);
    int i0 = idx[0];
    T total(0);
    for (size_t k = 1; k < idx.size(); ++k) {
        int j = idx[k];
        T aij = a(i0, j);
        if (aij == T(0)) continue;
        std::vector<int> rest;
        for (size_t t = 1; t < idx.size(); ++t)
            if (t != k) rest.push_back(idx[t]);
        T sub = pfaffian_expand<T>(a, rest);
        T term = aij * sub;
        total += (k % 2 == 1) ? term : -term;
    }
    return total;
}

double pfaffian(const Mat& a, double tol = 1e-12);
double pfaffian(const RingMatrix& a, double tol = 1e-12);
cplx pfaffian_complex(const Eigen::MatrixXcd& a, double tol = 1e-12);

// ac - |b|^2 for a 2x2 quaternion Hermitian matrix [[a, b], [conj b, c]].
double qdet2(const RingMatrix& m, double tol = 1e-12);

}  // namespace spinlab
