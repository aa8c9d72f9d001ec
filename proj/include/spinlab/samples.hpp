#pragma once

#include "spinlab/geometry.hpp"

#include <vector>

namespace spinlab {

// Integer coefficients in [-range, range], monomials of total degree lo..hi kept with probability density.
Poly random_poly(int arity, int lo, int hi, Rng& rng, int range = 3, double density = 0.5);

// Exact rational kernel basis of an integer/rational matrix given as rows.
std::vector<std::vector<mpq_class>> exact_kernel(const std::vector<std::vector<mpq_class>>& rows, int cols);

// f_ij, i <= j in pair_index order, with sum_j df_ij/dy_j = 0 identically.
// PUREODD(p), PUREEVEN(p) or M33NULL (three functions f11, f12, f22).
std::vector<Poly> trace_free_functions(const FamilyTag& tag, int degree, Rng& rng);

// PUREODD(p): f_ij = 1/2 h^{kl}_ij y_k y_l + 1/2 h_ij z^2 with h^{kl}_{kj} = 0 and h random.
std::vector<Poly> quadratic_family(int p, Rng& rng);

// A generic admissible draw for any family except M101.
std::vector<FreeFunction> sample_functions(const FamilyTag& tag, Rng& rng);

// Draws satisfying the Ricci-flat condition (M31, M41DEG, M51NULL: harmonic; M22GEN: zero mixed derivative).
std::vector<FreeFunction> harmonic_functions(const FamilyTag& tag, Rng& rng);
// |w|^2 style draws violating it.
std::vector<FreeFunction> witness_functions(const FamilyTag& tag);

std::vector<FreeFunction> as_functions(const std::vector<Poly>& polys);

}  // namespace spinlab
