#pragma once

#include "spinlab/algebra.hpp"
#include "spinlab/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace spinlab {

// Real matrix realization of Cl(p, q) with v w + w v = -2 (v.w) 1, where the
// form is positive on the first p generators. Generator i squares to -eta[i].
struct CliffordModel {
    int p = 0;
    int q = 0;
    std::vector<Mat> gens;
    std::vector<int> eta;

    int n() const { return p + q; }
    int size() const { return gens.empty() ? 1 : static_cast<int>(gens[0].rows()); }
    Mat identity() const { return Mat::Identity(size(), size()); }
    Mat monomial(unsigned mask) const;
    std::vector<Mat> monomials() const;
    Mat vector(const Vec& v) const;
    Mat inverse_gen(int i) const { return -eta[static_cast<size_t>(i)] * gens[static_cast<size_t>(i)]; }
    double relation_residual() const;
    double form(const Vec& v, const Vec& w) const;
};

// Algebra isomorphism class: summands copies of ring(size).
struct CliffordClass {
    Ring ring = Ring::R;
    int size = 1;
    int summands = 1;
    std::string str() const;
    bool operator==(const CliffordClass& o) const {
        return ring == o.ring && size == o.size && summands == o.summands;
    }
};

// Recursion order: Cl(0,0) = R; Cl(k,0) for k <= 8 and Cl(0,1) from the base
// realizations; p, q >= 1 via Cl(p-1,q-1) (x) Cl(1,1); Cl(p,0) for p > 8 via
// Cl(p-8,0) (x) Cl(8,0); Cl(0,q) for q >= 2 from generators of Cl(q-1,1).
CliffordModel build_algebra(int p, int q);

// Classification from the center of the span and its trace-form signature.
CliffordClass classify_span(const std::vector<Mat>& monomials, const std::vector<Mat>& generators);
CliffordClass classify_model(const CliffordModel& m);

// Periodic table entry by (p - q) mod 8 with size from the dimension count.
CliffordClass clifford_table(int p, int q);

int center_dimension(const std::vector<Mat>& monomials, const std::vector<Mat>& generators);
std::vector<Mat> even_monomials(const CliffordModel& m);
std::vector<Mat> even_generators(const CliffordModel& m);

// rho(v) w = -v w v^{-1}, returned in generator coordinates.
Vec twisted_reflection(const CliffordModel& m, const Vec& v, const Vec& w);
Mat reflection_matrix(const CliffordModel& m, const Vec& v);

// Orthonormal basis (columns) of a minimal subspace invariant under gens.
Mat irreducible_subspace(const std::vector<Mat>& gens, int ambient, Rng& rng);

struct SpinAlgebraBasis {
    int p = 0;
    int q = 0;
    // gamma_i gamma_j for i < j restricted to the spinor space.
    std::vector<Mat> basis;
    std::vector<std::pair<int, int>> pairs;
    int spinor_dim = 0;
    int module_dim = 0;
    bool halved = false;
    // Columns span the spinor space inside the matrix realization.
    Mat embed;
    // Vector representation of basis element k on R^{p,q}.
    Mat vector_action(int k) const;
    std::vector<int> eta;
};

SpinAlgebraBasis spin_representation(int p, int q, std::uint64_t seed = 7);

}  // namespace spinlab
