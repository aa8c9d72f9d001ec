#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Raised when a singular value falls inside the guard band, so the rank
// cannot be decided without guessing.
struct RankAmbiguity : std::runtime_error {
    double value;
    RankAmbiguity(const std::string& what, double v) : std::runtime_error(what), value(v) {}
};

struct RankOptions {
    double threshold = 1e-7;
    double band_lo = 1e-9;
    double band_hi = 1e-5;
};

// Singular values scaled by the largest one.
Vec relative_singular_values(const Mat& a);

int guarded_rank(const Mat& a, const RankOptions& opt = {});

// Orthonormal basis (columns) of the null space of a.
Mat kernel_basis(const Mat& a, const RankOptions& opt = {});

// Orthonormal basis (columns) of the column space of a.
Mat range_basis(const Mat& a, const RankOptions& opt = {});

Vec flatten(const Mat& m);
Mat unflatten(const Vec& v, int rows, int cols);

// Orthonormal basis of span{m_i} in the Frobenius inner product, as columns
// of flattened matrices.
Mat span_basis(const std::vector<Mat>& mats, const RankOptions& opt = {});

// Norm of the part of v orthogonal to the column span of an orthonormal q.
double residual_from_span(const Mat& q, const Vec& v);

Mat commutator(const Mat& a, const Mat& b);
Mat expm(const Mat& a);
Mat block_diag(const std::vector<Mat>& blocks);

// Elements of span(ambient) annihilated by a linear constraint map.
std::vector<Mat> constrained_basis(const std::vector<Mat>& ambient,
                                   const std::function<Vec(const Mat&)>& constraint,
                                   const RankOptions& opt = {});

// Symmetric bilinear signature (positive, negative) counted with tolerance.
std::pair<int, int> signature(const Mat& sym, double tol = 1e-9);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double normal() { return normal_(eng_); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    Vec normal_vec(int n);
    Mat normal_mat(int r, int c);
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace spinlab
