#include "spinlab/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <sstream>

namespace spinlab {

namespace {

void check_band(const Vec& rel, const RankOptions& opt) {
    for (int i = 0; i < rel.size(); ++i) {
        double s = rel(i);
        if (s >= opt.band_lo && s <= opt.band_hi) {
            std::ostringstream os;
            os << "rank ambiguous: relative singular value " << s << " inside guard band";
            throw RankAmbiguity(os.str(), s);
        }
    }
}

}  // namespace

Vec relative_singular_values(const Mat& a) {
    if (a.size() == 0) return Vec();
    if (a.rows() < a.cols()) return relative_singular_values(a.transpose());
    // Divide-and-conquer SVD straight on tall matrices mis-resolves tiny singular values
    // (seen on the 1815 x 1650 Bianchi map); reduce to the square triangular factor first.
    Mat r = a;
    if (a.rows() > a.cols()) {
        Eigen::ColPivHouseholderQR<Mat> qr(a);
        r = qr.matrixR().topRows(a.cols()).triangularView<Eigen::Upper>();
    }
    Eigen::BDCSVD<Mat> svd(r);
    Vec s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return Vec::Zero(s.size());
    return s / s(0);
}

int guarded_rank(const Mat& a, const RankOptions& opt) {
    Vec rel = relative_singular_values(a);
    if (rel.size() == 0 || rel(0) == 0.0) return 0;
    check_band(rel, opt);
    int r = 0;
    for (int i = 0; i < rel.size(); ++i)
        if (rel(i) > opt.threshold) ++r;
    return r;
}

Mat kernel_basis(const Mat& a, const RankOptions& opt) {
    const int n = static_cast<int>(a.cols());
    if (a.rows() == 0 || a.norm() == 0.0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    Vec s = svd.singularValues();
    Vec rel = s / s(0);
    check_band(rel, opt);
    int r = 0;
    for (int i = 0; i < rel.size(); ++i)
        if (rel(i) > opt.threshold) ++r;
    return svd.matrixV().rightCols(n - r);
}

Mat range_basis(const Mat& a, const RankOptions& opt) {
    if (a.cols() == 0 || a.norm() == 0.0) return Mat(a.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
    Vec s = svd.singularValues();
    Vec rel = s / s(0);
    check_band(rel, opt);
    int r = 0;
    for (int i = 0; i < rel.size(); ++i)
        if (rel(i) > opt.threshold) ++r;
    return svd.matrixU().leftCols(r);
}

Vec flatten(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unflatten(const Vec& v, int rows, int cols) {
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat span_basis(const std::vector<Mat>& mats, const RankOptions& opt) {
    if (mats.empty()) return Mat();
    Mat cols(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
    for (size_t i = 0; i < mats.size(); ++i) {
        double n = mats[i].norm();
        cols.col(static_cast<Eigen::Index>(i)) = n > 0 ? Vec(flatten(mats[i]) / n) : Vec(flatten(mats[i]));
    }
    return range_basis(cols, opt);
}

double residual_from_span(const Mat& q, const Vec& v) {
    if (q.cols() == 0) return v.norm();
    return (v - q * (q.transpose() * v)).norm();
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat expm(const Mat& a) { return a.exp(); }

Mat block_diag(const std::vector<Mat>& blocks) {
    Eigen::Index r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat out = Mat::Zero(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

std::vector<Mat> constrained_basis(const std::vector<Mat>& ambient,
                                   const std::function<Vec(const Mat&)>& constraint,
                                   const RankOptions& opt) {
    if (ambient.empty()) return {};
    Vec first = constraint(ambient[0]);
    Mat c(first.size(), static_cast<Eigen::Index>(ambient.size()));
    c.col(0) = first;
    for (size_t i = 1; i < ambient.size(); ++i) c.col(static_cast<Eigen::Index>(i)) = constraint(ambient[i]);
    Mat k = kernel_basis(c, opt);
    std::vector<Mat> out;
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
        Mat m = Mat::Zero(ambient[0].rows(), ambient[0].cols());
        for (size_t i = 0; i < ambient.size(); ++i) m += k(static_cast<Eigen::Index>(i), j) * ambient[i];
        out.push_back(m);
    }
    return out;
}

std::pair<int, int> signature(const Mat& sym, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()));
    int pos = 0, neg = 0;
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double e = es.eigenvalues()(i);
        if (e > tol * scale) ++pos;
        else if (e < -tol * scale) ++neg;
    }
    return {pos, neg};
}

Vec Rng::normal_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
}

Mat Rng::normal_mat(int r, int c) {
    Mat m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = normal();
    return m;
}

}  // namespace spinlab
