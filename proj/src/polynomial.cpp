#include "spinlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace spinlab {

// ---- Poly

Poly Poly::constant(int arity, const mpq_class& c) {
    Poly p(arity);
    p.add_term(Exponent(static_cast<size_t>(arity), 0), c);
    return p;
}

Poly Poly::variable(int arity, int i) {
    if (i < 0 || i >= arity) throw std::out_of_range("variable index");
    Exponent e(static_cast<size_t>(arity), 0);
    e[static_cast<size_t>(i)] = 1;
    return monomial(e, 1);
}

Poly Poly::monomial(const Exponent& e, const mpq_class& c) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

void Poly::add_term(const Exponent& e, const mpq_class& c) {
    if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("exponent length does not match arity");
    for (int k : e)
        if (k < 0) throw std::invalid_argument("negative exponent");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

mpq_class Poly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Poly::check(const Poly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
}

Poly Poly::operator+(const Poly& o) const {
    check(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator*(const mpq_class& s) const {
    Poly r(arity_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check(o);
    Poly r(arity_);
    Exponent e(static_cast<size_t>(arity_));
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly Poly::deriv(int i) const {
    if (i < 0 || i >= arity_) throw std::out_of_range("derivative index");
    Poly r(arity_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<size_t>(i)];
        if (k == 0) continue;
        Exponent f = e;
        f[static_cast<size_t>(i)] -= 1;
        r.add_term(f, c * k);
    }
    return r;
}

Poly Poly::truncate(int order) const {
    Poly r(arity_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) <= order) r.terms_.emplace(e, c);
    return r;
}

Poly Poly::embed(int arity, const std::vector<int>& map) const {
    if (static_cast<int>(map.size()) != arity_) throw std::invalid_argument("embedding map has wrong length");
    Poly r(arity);
    for (const auto& [e, c] : terms_) {
        Exponent f(static_cast<size_t>(arity), 0);
        for (int i = 0; i < arity_; ++i) {
            int t = map[static_cast<size_t>(i)];
            if (t < 0 || t >= arity) throw std::out_of_range("embedding target");
            f[static_cast<size_t>(t)] += e[static_cast<size_t>(i)];
        }
        r.add_term(f, c);
    }
    return r;
}

double Poly::eval(const Vec& x) const {
    if (x.size() != arity_) throw std::invalid_argument("point has wrong dimension");
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < arity_; ++i) t *= std::pow(x(i), e[static_cast<size_t>(i)]);
        s += t;
    }
    return s;
}

mpq_class Poly::eval(const std::vector<mpq_class>& x) const {
    if (static_cast<int>(x.size()) != arity_) throw std::invalid_argument("point has wrong dimension");
    mpq_class s = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class t = c;
        for (int i = 0; i < arity_; ++i)
            for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) t *= x[static_cast<size_t>(i)];
        s += t;
    }
    return s;
}

// ---- MonomialSet

namespace {

void enumerate(int n, int deg, int var, Exponent& cur, std::vector<Exponent>& out) {
    if (var == n - 1) {
        cur[static_cast<size_t>(var)] = deg;
        out.push_back(cur);
        return;
    }
    for (int k = deg; k >= 0; --k) {
        cur[static_cast<size_t>(var)] = k;
        enumerate(n, deg - k, var + 1, cur, out);
    }
    cur[static_cast<size_t>(var)] = 0;
}

constexpr int kTableLimit = 3000;

}  // namespace

int MonomialSet::find(const Exponent& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
}

std::shared_ptr<const MonomialSet> MonomialSet::get(int n, int order) {
    if (n < 1 || order < 0) throw std::invalid_argument("monomial set needs n >= 1 and order >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialSet>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, order);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto s = std::make_shared<MonomialSet>();
    s->n = n;
    s->order = order;
    Exponent cur(static_cast<size_t>(n), 0);
    for (int d = 0; d <= order; ++d) {
        enumerate(n, d, 0, cur, s->mons);
        s->upto.push_back(static_cast<int>(s->mons.size()));
    }
    const int size = s->size();
    for (int i = 0; i < size; ++i) {
        s->index.emplace(s->mons[static_cast<size_t>(i)], i);
        const auto& m = s->mons[static_cast<size_t>(i)];
        s->degree.push_back(std::accumulate(m.begin(), m.end(), 0));
    }
    s->lower.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(size), -1));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < size; ++i) {
            Exponent e = s->mons[static_cast<size_t>(i)];
            if (e[static_cast<size_t>(k)] == 0) continue;
            e[static_cast<size_t>(k)] -= 1;
            s->lower[static_cast<size_t>(k)][static_cast<size_t>(i)] = s->find(e);
        }
    if (size <= kTableLimit) {
        s->product.assign(static_cast<size_t>(size) * static_cast<size_t>(size), -1);
        Exponent e(static_cast<size_t>(n));
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < s->upto[static_cast<size_t>(order - s->degree[static_cast<size_t>(i)])]; ++j) {
                for (int v = 0; v < n; ++v)
                    e[static_cast<size_t>(v)] = s->mons[static_cast<size_t>(i)][static_cast<size_t>(v)] +
                                                s->mons[static_cast<size_t>(j)][static_cast<size_t>(v)];
                s->product[static_cast<size_t>(i) * static_cast<size_t>(size) + static_cast<size_t>(j)] = s->find(e);
            }
    }
    cache.emplace(key, s);
    return s;
}

// ---- BasicJet

namespace {

template <class T>
bool is_zero_value(const T& v) {
    return v == 0;
}

template <class T>
T factorial(int k) {
    T r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace

template <class T>
BasicJet<T>::BasicJet(std::shared_ptr<const MonomialSet> set, int order) : set_(std::move(set)), order_(order) {
    if (!set_) throw std::invalid_argument("jet without monomial set");
    if (order_ < 0 || order_ > set_->order) throw std::invalid_argument("jet order outside its monomial set");
    c_.assign(static_cast<size_t>(set_->size()), T(0));
}

template <class T>
BasicJet<T> BasicJet<T>::constant(std::shared_ptr<const MonomialSet> set, const T& v) {
    const int o = set->order;
    BasicJet r(std::move(set), o);
    r.c_[0] = v;
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::variable(std::shared_ptr<const MonomialSet> set, int i, const T& v) {
    if (i < 0 || i >= set->n) throw std::out_of_range("jet variable index");
    BasicJet r = constant(std::move(set), v);
    if (r.order_ >= 1) r.c_[static_cast<size_t>(1 + i)] = 1;
    return r;
}

template <class T>
T BasicJet<T>::coeff(const Exponent& e) const {
    int i = set_->find(e);
    if (i < 0 || set_->degree[static_cast<size_t>(i)] > order_) throw std::out_of_range("monomial beyond jet order");
    return c_[static_cast<size_t>(i)];
}

template <class T>
T BasicJet<T>::partial(const Exponent& a) const {
    T f = 1;
    for (int k : a) f *= factorial<T>(k);
    return coeff(a) * f;
}

template <class T>
T BasicJet<T>::partial(int i) const {
    Exponent e(static_cast<size_t>(vars()), 0);
    e[static_cast<size_t>(i)] += 1;
    return partial(e);
}

template <class T>
T BasicJet<T>::partial(int i, int j) const {
    Exponent e(static_cast<size_t>(vars()), 0);
    e[static_cast<size_t>(i)] += 1;
    e[static_cast<size_t>(j)] += 1;
    return partial(e);
}

template <class T>
void BasicJet<T>::check(const BasicJet& o) const {
    if (!set_ || !o.set_) throw std::invalid_argument("uninitialized jet");
    if (set_ != o.set_ && (set_->n != o.set_->n || set_->order != o.set_->order))
        throw std::invalid_argument("jets over different monomial sets");
}

template <class T>
BasicJet<T> BasicJet<T>::operator+(const BasicJet& o) const {
    check(o);
    BasicJet r(set_, std::min(order_, o.order_));
    for (int i = 0; i < set_->upto[static_cast<size_t>(r.order_)]; ++i)
        r.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] + o.c_[static_cast<size_t>(i)];
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::operator-(const BasicJet& o) const {
    check(o);
    BasicJet r(set_, std::min(order_, o.order_));
    for (int i = 0; i < set_->upto[static_cast<size_t>(r.order_)]; ++i)
        r.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] - o.c_[static_cast<size_t>(i)];
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::operator-() const {
    BasicJet r(set_, order_);
    for (int i = 0; i < set_->upto[static_cast<size_t>(order_)]; ++i) r.c_[static_cast<size_t>(i)] = -c_[static_cast<size_t>(i)];
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::operator*(const T& s) const {
    BasicJet r(set_, order_);
    for (int i = 0; i < set_->upto[static_cast<size_t>(order_)]; ++i) r.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] * s;
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::operator+(const T& s) const {
    BasicJet r = *this;
    r.c_[0] += s;
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::operator*(const BasicJet& o) const {
    check(o);
    const int ord = std::min(order_, o.order_);
    BasicJet r(set_, ord);
    const auto& s = *set_;
    const size_t size = static_cast<size_t>(s.size());
    Exponent e(static_cast<size_t>(s.n));
    for (int i = 0; i < s.upto[static_cast<size_t>(ord)]; ++i) {
        const T& a = c_[static_cast<size_t>(i)];
        if (is_zero_value(a)) continue;
        const int lim = s.upto[static_cast<size_t>(ord - s.degree[static_cast<size_t>(i)])];
        for (int j = 0; j < lim; ++j) {
            const T& b = o.c_[static_cast<size_t>(j)];
            if (is_zero_value(b)) continue;
            int k;
            if (!s.product.empty()) {
                k = s.product[static_cast<size_t>(i) * size + static_cast<size_t>(j)];
            } else {
                for (int v = 0; v < s.n; ++v)
                    e[static_cast<size_t>(v)] = s.mons[static_cast<size_t>(i)][static_cast<size_t>(v)] +
                                                s.mons[static_cast<size_t>(j)][static_cast<size_t>(v)];
                k = s.find(e);
            }
            r.c_[static_cast<size_t>(k)] += a * b;
        }
    }
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::deriv(int k) const {
    if (k < 0 || k >= vars()) throw std::out_of_range("derivative index");
    if (order_ == 0) throw std::domain_error("derivative of an order-0 jet");
    BasicJet r(set_, order_ - 1);
    const auto& low = set_->lower[static_cast<size_t>(k)];
    for (int i = 1; i < set_->upto[static_cast<size_t>(order_)]; ++i) {
        int t = low[static_cast<size_t>(i)];
        if (t < 0) continue;
        r.c_[static_cast<size_t>(t)] += c_[static_cast<size_t>(i)] * set_->mons[static_cast<size_t>(i)][static_cast<size_t>(k)];
    }
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::truncate(int order) const {
    BasicJet r(set_, std::min(order, order_));
    for (int i = 0; i < set_->upto[static_cast<size_t>(r.order_)]; ++i) r.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::compose(const std::vector<T>& derivs) const {
    const int o = std::min(order_, static_cast<int>(derivs.size()) - 1);
    if (o < 0) throw std::invalid_argument("composition needs at least the value");
    BasicJet u = truncate(o);
    u.c_[0] = 0;
    BasicJet r = constant(set_, derivs[static_cast<size_t>(o)] / factorial<T>(o)).truncate(o);
    for (int k = o - 1; k >= 0; --k) r = (r * u) + derivs[static_cast<size_t>(k)] / factorial<T>(k);
    return r;
}

template <class T>
BasicJet<T> BasicJet<T>::reciprocal() const {
    const T& a = c_[0];
    if (is_zero_value(a)) throw std::domain_error("reciprocal of a jet with zero value");
    std::vector<T> d(static_cast<size_t>(order_ + 1));
    T p = T(1) / a;
    for (int k = 0; k <= order_; ++k) {
        d[static_cast<size_t>(k)] = p * factorial<T>(k) * (k % 2 ? T(-1) : T(1));
        p /= a;
    }
    return compose(d);
}

template <class T>
bool BasicJet<T>::is_zero() const {
    for (int i = 0; i < set_->upto[static_cast<size_t>(order_)]; ++i)
        if (!is_zero_value(c_[static_cast<size_t>(i)])) return false;
    return true;
}

template class BasicJet<double>;
template class BasicJet<mpq_class>;

Jet jet_exp(const Jet& a) { return a.compose(std::vector<double>(static_cast<size_t>(a.order() + 1), std::exp(a.value()))); }

Jet jet_sin(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const double cyc[4] = {s, c, -s, -c};
    std::vector<double> d;
    for (int k = 0; k <= a.order(); ++k) d.push_back(cyc[k % 4]);
    return a.compose(d);
}

Jet jet_cos(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const double cyc[4] = {c, -s, -c, s};
    std::vector<double> d;
    for (int k = 0; k <= a.order(); ++k) d.push_back(cyc[k % 4]);
    return a.compose(d);
}

std::vector<Jet> coordinate_jets(const Vec& point, int order) {
    auto set = MonomialSet::get(static_cast<int>(point.size()), order);
    std::vector<Jet> out;
    for (int i = 0; i < point.size(); ++i) out.push_back(Jet::variable(set, i, point(i)));
    return out;
}

Jet eval_jet(const Poly& p, const std::vector<Jet>& args) {
    if (static_cast<int>(args.size()) != p.arity()) throw std::invalid_argument("polynomial called with wrong number of arguments");
    if (args.empty()) throw std::invalid_argument("polynomial of no variables has no jet set");
    const auto& set = args[0].set();
    int order = set->order;
    for (const auto& a : args) order = std::min(order, a.order());
    std::vector<std::vector<Jet>> pw(args.size());
    Jet r(set, order);
    for (const auto& [e, c] : p.terms()) {
        Jet t = Jet::constant(set, c.get_d()).truncate(order);
        for (size_t i = 0; i < args.size(); ++i) {
            const int k = e[i];
            if (k == 0) continue;
            auto& v = pw[i];
            if (v.empty()) v.push_back(args[i].truncate(order));
            while (static_cast<int>(v.size()) < k) v.push_back(v.back() * v[0]);
            t = t * v[static_cast<size_t>(k - 1)];
        }
        r += t;
    }
    return r;
}

ExactJet to_exact_jet(const Poly& p, int order) {
    auto set = MonomialSet::get(p.arity(), order);
    ExactJet r(set, order);
    for (const auto& [e, c] : p.terms()) {
        int i = set->find(e);
        if (i >= 0) r[i] = c;
    }
    return r;
}

Poly from_exact_jet(const ExactJet& j) {
    Poly p(j.vars());
    const auto& s = *j.set();
    for (int i = 0; i < s.upto[static_cast<size_t>(j.order())]; ++i)
        if (j[i] != 0) p.add_term(s.mons[static_cast<size_t>(i)], j[i]);
    return p;
}

// ---- FreeFunction

FreeFunction FreeFunction::polynomial(const Poly& p, std::string label) {
    FreeFunction f;
    f.arity = p.arity();
    f.poly = p;
    f.label = std::move(label);
    return f;
}

FreeFunction FreeFunction::from_jets(int arity, std::function<Jet(const std::vector<Jet>&)> fn, std::string label) {
    FreeFunction f;
    f.arity = arity;
    f.custom = std::move(fn);
    f.label = std::move(label);
    return f;
}

FreeFunction FreeFunction::zero(int arity) { return polynomial(Poly(arity), "0"); }

Jet FreeFunction::operator()(const std::vector<Jet>& args) const {
    if (static_cast<int>(args.size()) != arity) throw std::invalid_argument("free function called with wrong arity");
    if (custom) return custom(args);
    if (poly) return eval_jet(*poly, args);
    throw std::logic_error("free function has no evaluation handle");
}

Jet FreeFunction::at(const Vec& x, int order) const { return (*this)(coordinate_jets(x, order)); }

double FreeFunction::value(const Vec& x) const {
    if (poly && !custom) return poly->eval(x);
    return at(x, 0).value();
}

double finite_difference_error(const FreeFunction& f, const Vec& x, double h) {
    Jet j = f.at(x, 2);
    const int n = f.arity;
    double worst = 0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (int i = 0; i < n; ++i) {
        Vec ei = Vec::Unit(n, i) * h;
        double d1 = (f.value(x + ei) - f.value(x - ei)) / (2 * h);
        worst = std::max(worst, rel(d1, j.partial(i)));
        for (int k = i; k < n; ++k) {
            Vec ek = Vec::Unit(n, k) * h;
            double d2 = (f.value(x + ei + ek) - f.value(x + ei - ek) - f.value(x - ei + ek) + f.value(x - ei - ek)) / (4 * h * h);
            worst = std::max(worst, rel(d2, j.partial(i, k)));
        }
    }
    return worst;
}

}  // namespace spinlab
