#pragma once

#include "spinlab/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace spinlab {

// Exact truncated series. Odd case variables (z, x^1..x^p, y_1..y_p); even case (x^1..x^p, y_1..y_p).
using JetSeries = ExactJet;

struct CauchyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a_jl, b_jl for j <= l in pair_index order, polynomials in the 2p variables (x, y).
// Odd: f(0, x, y) = a, df/dz(0, x, y) = b.
// Even: f = a on {x^1 = 0} (a free of x^1), f = b on {y_1 = 0} (b free of y_1), a = b on the corner.
struct CauchyData {
    int p = 2;
    int order = 6;
    bool odd = true;
    std::vector<Poly> a, b;
};

// Odd case only. Display: d^2f/dz^2 = rhs, from the closed-form Ricci 2 (f_zz - rhs).
// Oracle: d^2f/dz^2 = -2 rhs, from the coordinate Ricci -(f_zz + 2 rhs) of the same metric.
enum class RicciForm { Display, Oracle };

struct CauchyOptions {
    bool allow_constraint_violation = false;
    RicciForm form = RicciForm::Display;
};

struct CauchySolution {
    int p = 0;
    int order = 0;
    bool odd = true;
    RicciForm form = RicciForm::Display;
    std::vector<JetSeries> f;  // pair_index order
    // Even case only: terms added to b_{2l} (free of y_1, vanishing at x^1 = 0) so that A_l = 0 on {y_1 = 0}.
    std::vector<Poly> corrections;
    const JetSeries& at(int j, int l) const;
    int vars() const { return odd ? 2 * p + 1 : 2 * p; }
    int y_index(int k) const { return (odd ? 1 : 0) + p + k; }
    int x_index(int k) const { return (odd ? 1 : 0) + k; }
};

// sum_j d a_ij / dy_j for each row, then the same for b in the odd case.
std::vector<Poly> data_constraint_residuals(const CauchyData& data);

CauchySolution solve_ricci_ivp(const CauchyData& data, const CauchyOptions& opt = {});

// Right-hand side d^2 f_jl/dx^k dy_k - f_mk d^2 f_jl/dy_m dy_k + (df_mj/dy_k)(df_kl/dy_m), order N - 2.
std::vector<JetSeries> ivp_rhs(const CauchySolution& s);

// A_l = sum_j d f_jl / dy_j, order N - 1.
std::vector<JetSeries> constraint_residual(const CauchySolution& s);

struct RicciSeriesReport {
    std::vector<JetSeries> ricci;  // pair_index order, the closed-form Ricci coefficient of dx^j dx^l
    int order = 0;                 // series are valid to this total degree
    bool zero = false;
    int first_nonzero_degree = -1;
};

// Ricci of the solved f as series: the even display, or the odd form the solution was built from.
RicciSeriesReport verify_ricci_flat(const CauchySolution& s);

// Truncate every component to total degree order.
CauchySolution restrict_order(const CauchySolution& s, int order);
bool same_coefficients(const CauchySolution& a, const CauchySolution& b);

// f_jl as polynomials in the solution's variables.
std::vector<Poly> solution_polynomials(const CauchySolution& s);

// Lowest total degree with a nonzero coefficient, -1 if the series vanishes.
int lowest_degree(const JetSeries& j);

}  // namespace spinlab
