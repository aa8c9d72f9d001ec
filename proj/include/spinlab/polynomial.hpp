#pragma once

#include "spinlab/linalg.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace spinlab {

using Exponent = std::vector<int>;

// Sparse polynomial with exact rational coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int arity) : arity_(arity) {}
    static Poly constant(int arity, const mpq_class& c);
    static Poly variable(int arity, int i);
    static Poly monomial(const Exponent& e, const mpq_class& c);

    int arity() const { return arity_; }
    const std::map<Exponent, mpq_class>& terms() const { return terms_; }
    void add_term(const Exponent& e, const mpq_class& c);
    mpq_class coeff(const Exponent& e) const;
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero polynomial

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpq_class& s) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    Poly deriv(int i) const;
    Poly truncate(int order) const;
    // Variable i of this polynomial becomes variable map[i] of a polynomial in arity variables.
    Poly embed(int arity, const std::vector<int>& map) const;

    double eval(const Vec& x) const;
    mpq_class eval(const std::vector<mpq_class>& x) const;

private:
    void check(const Poly& o) const;
    int arity_ = 0;
    std::map<Exponent, mpq_class> terms_;
};

// All monomials in n variables of total degree <= order, graded, with a product table.
struct MonomialSet {
    int n = 0;
    int order = 0;
    std::vector<Exponent> mons;
    std::vector<int> degree;
    std::vector<int> upto;  // upto[d] = number of monomials of degree <= d
    std::vector<int> product;  // size*size, -1 past the order
    std::vector<std::vector<int>> lower;  // lower[k][i] = index of mons[i] - e_k, or -1
    std::map<Exponent, int> index;

    int size() const { return static_cast<int>(mons.size()); }
    int find(const Exponent& e) const;
    static std::shared_ptr<const MonomialSet> get(int n, int order);
};

// Truncated Taylor series about a point: sum c_a t^a over a MonomialSet, valid to order().
template <class T>
class BasicJet {
public:
    BasicJet() = default;
    BasicJet(std::shared_ptr<const MonomialSet> set, int order);
    static BasicJet constant(std::shared_ptr<const MonomialSet> set, const T& v);
    static BasicJet variable(std::shared_ptr<const MonomialSet> set, int i, const T& v);

    const std::shared_ptr<const MonomialSet>& set() const { return set_; }
    int order() const { return order_; }
    int vars() const { return set_->n; }
    const T& value() const { return c_[0]; }
    const std::vector<T>& coeffs() const { return c_; }
    T& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const T& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    T coeff(const Exponent& e) const;
    // Partial derivative d^a at the expansion point, a! c_a.
    T partial(const Exponent& a) const;
    T partial(int i) const;
    T partial(int i, int j) const;

    BasicJet operator+(const BasicJet& o) const;
    BasicJet operator-(const BasicJet& o) const;
    BasicJet operator*(const BasicJet& o) const;
    BasicJet operator*(const T& s) const;
    BasicJet operator+(const T& s) const;
    BasicJet operator-() const;
    BasicJet& operator+=(const BasicJet& o) { return *this = *this + o; }
    BasicJet& operator-=(const BasicJet& o) { return *this = *this - o; }

    BasicJet deriv(int k) const;
    BasicJet truncate(int order) const;
    BasicJet reciprocal() const;
    // h(this) given h and its derivatives at value(), derivs[k] = h^(k).
    BasicJet compose(const std::vector<T>& derivs) const;
    bool is_zero() const;

private:
    void check(const BasicJet& o) const;
    std::shared_ptr<const MonomialSet> set_;
    int order_ = 0;
    std::vector<T> c_;
};

using Jet = BasicJet<double>;
using ExactJet = BasicJet<mpq_class>;

extern template class BasicJet<double>;
extern template class BasicJet<mpq_class>;

Jet jet_exp(const Jet& a);
Jet jet_sin(const Jet& a);
Jet jet_cos(const Jet& a);

// Coordinate jets x_i + t_i about a point.
std::vector<Jet> coordinate_jets(const Vec& point, int order);

Jet eval_jet(const Poly& p, const std::vector<Jet>& args);
// Polynomial about the origin as an exact jet in n = p.arity() variables.
ExactJet to_exact_jet(const Poly& p, int order);
Poly from_exact_jet(const ExactJet& j);

// An arbitrary function of a fixed number of variables, evaluated through jets.
struct FreeFunction {
    int arity = 0;
    std::optional<Poly> poly;
    std::function<Jet(const std::vector<Jet>&)> custom;
    std::string label;

    static FreeFunction polynomial(const Poly& p, std::string label = "");
    static FreeFunction from_jets(int arity, std::function<Jet(const std::vector<Jet>&)> fn, std::string label);
    static FreeFunction zero(int arity);

    Jet operator()(const std::vector<Jet>& args) const;
    Jet at(const Vec& x, int order) const;
    double value(const Vec& x) const;
};

// Largest relative mismatch between jet first/second derivatives and central differences.
double finite_difference_error(const FreeFunction& f, const Vec& x, double h = 1e-4);

}  // namespace spinlab
