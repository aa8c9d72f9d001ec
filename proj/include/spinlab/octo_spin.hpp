#pragma once

#include "spinlab/algebra.hpp"
#include "spinlab/linalg.hpp"

#include <array>
#include <vector>

namespace spinlab {

// (g1, g2, g3) with g2(xy) = g1(x) g3(y).
struct TrialityTriple {
    Mat g1, g2, g3;
};

enum class TrialityMap { Alpha, Beta, Tau };

Mat clifford_map_mx(const Octonion& x);

double triple_residual(const TrialityTriple& t);
TrialityTriple sigma_triple(const Octonion& u);  // (L_u, L_u R_u, R_u), |u| = 1
TrialityTriple compose(const TrialityTriple& a, const TrialityTriple& b);
TrialityTriple random_triple(Rng& rng, int factors = 4);
TrialityTriple triality_apply(const TrialityTriple& t, TrialityMap which);

// Infinitesimal triples (a1, a2, a3) in so(8)^3 with a2(xy) = a1(x) y + x a3(y).
using Spin8Element = std::array<Mat, 3>;
double spin8_residual(const Spin8Element& a);
// a2 by least squares over basis pairs; throws if (a1, a3) is incompatible.
Mat derive_a2(const Mat& a1, const Mat& a3, double tol = 1e-8);
const std::vector<Spin8Element>& spin8_basis();  // 28, orthonormal
std::vector<Spin8Element> k1_basis();            // a1(1) = 0, 21-dimensional
int projection_rank(int i);                      // rank of a -> a_i on the triple algebra

struct Spin101Params {
    double x = 0, y = 0, z = 0;
    Octonion bx, by, bz;
    Mat a1 = Mat::Zero(8, 8);
    Mat a3 = Mat::Zero(8, 8);
};

struct Spin101Element {
    Spin101Params params;
    Mat a2;
    Mat matrix;  // 32 x 32
};

Spin101Element spin101_element(const Spin101Params& p);
// Coordinates: 28 spin(8) coefficients, then x, y, z, then bx, by, bz.
Spin101Params params_from_coeffs(const Vec& c);
Vec coeffs_from_matrix(const Mat& m, double* residual = nullptr);
const std::vector<Mat>& spin101_basis();  // 55 assembled matrices
Spin101Params random_spin101(Rng& rng, double scale = 1.0);

Mat rho_prime(const Spin101Element& m);  // 11 x 11 on (a1, a2, a3, x)
Mat gram101();
double inner101(const Vec& a, const Vec& b);

Vec sigma_10_1(const Vec& z);
double p_invariant(const Vec& z);
Vec null_spinor_z0();

// Displayed stabilizer algebra of z0: (y, by) block plus a in k1.
std::vector<Mat> null_stabilizer_template();
int stabilizer_dim_101(const Vec& z, const RankOptions& opt = {});
// Kernel dimension at z0; throws if the displayed template fails to annihilate z0.
int null_stabilizer_dim();

}  // namespace spinlab
