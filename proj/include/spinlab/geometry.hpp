#pragma once

#include "spinlab/linalg.hpp"
#include "spinlab/polynomial.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

enum class Family { M21, M31, M22GEN, M22DEG, M41DEG, M51NULL, M33GEN, M33NULL, PUREODD, PUREEVEN, M101 };

struct FamilyTag {
    Family family = Family::M21;
    int p = 0;  // only for PUREODD / PUREEVEN
};

std::string family_name(const FamilyTag& tag);
FamilyTag parse_family(const std::string& name);  // "M21", "PUREODD(3)", ...

struct MetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct JetMat {
    int rows = 0, cols = 0;
    std::vector<Jet> e;
    JetMat() = default;
    JetMat(int r, int c, const Jet& fill) : rows(r), cols(c), e(static_cast<size_t>(r * c), fill) {}
    Jet& operator()(int i, int j) { return e[static_cast<size_t>(i * cols + j)]; }
    const Jet& operator()(int i, int j) const { return e[static_cast<size_t>(i * cols + j)]; }
    Mat value() const;
    Mat partial(int k) const;
    Mat partial(int k, int l) const;
};

// k-form at a point: coordinate components on sorted index tuples, each with its gradient.
struct FormAtPoint {
    int degree = 0;
    std::map<std::vector<int>, std::pair<double, Vec>> comps;
};

struct NamedForm {
    std::string name;
    std::function<FormAtPoint(const Vec&)> eval;
};

struct CoordinateMetric {
    FamilyTag tag;
    int n = 0;
    std::pair<int, int> signature{0, 0};  // (positive, negative)
    std::vector<std::string> coords;
    std::vector<FreeFunction> functions;
    Mat gram;                     // constant Gram matrix of the adapted coframe
    std::vector<Mat> stabilizer;  // acting on coframe columns, dw = -alpha ^ w
    std::function<JetMat(const std::vector<Jet>&)> components;
    std::function<JetMat(const std::vector<Jet>&)> coframe;  // row a = coefficients of w^a
    std::vector<NamedForm> parallel_forms;

    JetMat metric_jets(const Vec& x, int order) const;
    JetMat coframe_jets(const Vec& x, int order) const;
    Mat at(const Vec& x) const;
};

// Number and arity of the free functions a family expects.
std::pair<int, int> family_arity(const FamilyTag& tag);
CoordinateMetric build_metric(const FamilyTag& tag, const std::vector<FreeFunction>& functions);

// Index of f_ij (i <= j) in the PUREODD / PUREEVEN function list.
int pair_index(int p, int i, int j);

double coframe_gram_residual(const CoordinateMetric& m, const Vec& x);
std::vector<Vec> probe_points(const CoordinateMetric& m, Rng& rng, int count, double half_width = 0.5);

struct CurvatureData {
    int n = 0;
    Mat g, ginv;
    std::vector<Mat> gamma;   // gamma[k](i, j) = Gamma^k_ij
    std::vector<Mat> dgamma;  // dgamma[l * n + k](i, j) = d_l Gamma^k_ij
    std::vector<double> riemann;  // R^r_{s m v}
    Mat ricci;
    double R(int r, int s, int m, int v) const {
        return riemann[static_cast<size_t>(((r * n + s) * n + m) * n + v)];
    }
};

CurvatureData curvature(const CoordinateMetric& m, const Vec& x);
Mat ricci_numeric(const CoordinateMetric& m, const Vec& x);
// Same contraction with metric derivatives from central differences.
Mat ricci_finite_difference(const CoordinateMetric& m, const Vec& x, double h = 1e-3);

bool has_closed_form_ricci(const FamilyTag& tag);
Mat ricci_closed_form(const FamilyTag& tag, const std::vector<FreeFunction>& functions, const Vec& x);
Mat ricci_closed_form(const CoordinateMetric& m, const Vec& x);

struct RicciComparison {
    double constant = 0;  // closed form = constant * numeric
    double max_relative_error = 0;
    double max_numeric = 0;
    int samples = 0;
};
// constant fixed when given, fitted by least squares otherwise.
RicciComparison compare_ricci(const CoordinateMetric& m, const std::vector<Vec>& points,
                              std::optional<double> constant = std::nullopt);

struct ConstraintReport {
    std::vector<std::string> names;
    std::vector<double> residuals;
    double max() const;
};
ConstraintReport constraint_check(const CoordinateMetric& m, const std::vector<Vec>& points);

struct ConnectionCheck {
    Mat coframe;
    std::vector<Mat> alpha;  // alpha[nu] = connection matrix evaluated on d/dx^nu
    double gram_residual = 0;
    double skew_residual = 0;
    double residual = 0;  // largest distance of alpha[nu] from the stabilizer span
};
ConnectionCheck adapted_connection_check(const CoordinateMetric& m, const Vec& x);

// Curvature operators Omega(e_c, e_d), c < d, in the adapted frame.
std::vector<Mat> frame_curvature(const CoordinateMetric& m, const Vec& x);

double covariant_derivative_norm(const CoordinateMetric& m, const NamedForm& form, const Vec& x);
FormAtPoint constant_form(int n, const std::vector<int>& indices);

struct HolonomyEstimate {
    std::vector<Mat> samples;
    Mat span;  // orthonormal flattened basis
    int dimension = 0;
    int reference = 0;
    int iterations = 0;
    double outside = 0;  // largest distance of a sample from the stabilizer span
};
HolonomyEstimate holonomy_span(const CoordinateMetric& m, const std::vector<Vec>& points, const RankOptions& opt = {});

// Lie algebra spanned by mats and closed under brackets (at most max_iter rounds).
Mat bracket_closure(const std::vector<Mat>& mats, int rows, int* iterations = nullptr, const RankOptions& opt = {},
                    int max_iter = 10);

struct CurvatureSpace {
    int dimension = 0;
    int algebra_dim = 0;
    int n = 0;
    int float_rank = 0;
    int modular_rank = -1;  // -1 when no exact basis was found
    bool exact_basis = false;
};
// Kernel of the first Bianchi map on h (x) Lambda^2.
CurvatureSpace curvature_space(const std::vector<Mat>& algebra, bool integer_check = true);
int curvature_space_dim(const std::vector<Mat>& algebra);

// Rank of an integer matrix modulo 2^31 - 1.
int modular_rank(std::vector<std::vector<long long>> rows);

// Rational basis of span(mats) with small denominators, checked against the float span.
std::optional<std::vector<std::vector<mpq_class>>> rational_span(const std::vector<Mat>& mats, int max_den = 64);

// ---- (10,1)

struct FiberFamily {
    std::string label;
    std::function<std::array<Mat, 4>(double)> derivs;  // E and its first three x3-derivatives
    static FiberFamily identity();
    static FiberFamily exponential(const Mat& s, std::string label);  // E = exp(x3 S)
};

std::vector<Mat> spin7_basis();          // 21 generators of spin(7) in gl(8)
std::vector<Mat> rho_prime_stabilizer();  // 30 generators of rho'(h) on R^{10,1}
// Invariant 4-form on R^8, components on sorted 4-tuples, largest entry 1.
std::map<std::vector<int>, double> spin7_four_form();

// g depends on (x2, x3) when arity is 2, on all eleven coordinates otherwise (and then not on x1).
CoordinateMetric build_metric_10_1(const FiberFamily& fiber, const FreeFunction& g);

}  // namespace spinlab
