#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "arw/core/error.hpp"
#include "arw/ring/field.hpp"
#include "arw/ring/monomial.hpp"

namespace arw {

template <CoefficientField F>
class Polynomial;

/// Multivariate polynomial ring k[x_1..x_n] with a monomial order and a
/// positive grading. Immutable after construction; share through
/// `PolyRingPtr`.
template <CoefficientField F>
class PolyRing {
 public:
  using value_type = typename F::value_type;

  PolyRing(F field, std::vector<std::string> names, OrderKind kind = OrderKind::kGrevlex,
           std::vector<std::int32_t> weights = {}, std::size_t block = 0)
      : field_(std::move(field)),
        names_(std::move(names)),
        order_(kind, names_.size(), std::move(weights), block) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      require(!names_[i].empty(), ErrorKind::kInvalidArgument, "empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        require(names_[i] != names_[j], ErrorKind::kInvalidArgument,
                "duplicate variable name '" + names_[i] + "'");
    }
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<std::int32_t>& weights() const { return order_.weights(); }

  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  Monomial monomial(const std::vector<int>& exps) const {
    require(exps.size() <= nvars(), ErrorKind::kInvalidArgument, "too many exponents");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      require(exps[i] >= 0 && exps[i] <= static_cast<int>(kMaxExponent),
              ErrorKind::kLimit, "exponent out of range");
      m.exp[i] = static_cast<std::uint16_t>(exps[i]);
    }
    m.deg = order_.degree_of(m);
    return m;
  }

  Polynomial<F> zero() const { return Polynomial<F>(this); }
  Polynomial<F> constant(const value_type& c) const { return term(c, Monomial{}); }
  Polynomial<F> one() const { return constant(field_.one()); }
  Polynomial<F> from_int(std::int64_t n) const { return constant(field_.from_int(n)); }
  Polynomial<F> term(const value_type& c, const Monomial& m) const {
    Polynomial<F> p(this);
    if (!field_.is_zero(c)) p.terms.push_back({m, c});
    return p;
  }
  Polynomial<F> variable(std::size_t i) const {
    require(i < nvars(), ErrorKind::kInvalidArgument, "variable index out of range");
    std::vector<int> e(nvars(), 0);
    e[i] = 1;
    return term(field_.one(), monomial(e));
  }
  Polynomial<F> variable(const std::string& name) const {
    int i = var_index(name);
    require(i >= 0, ErrorKind::kInvalidArgument, "unknown variable '" + name + "'");
    return variable(static_cast<std::size_t>(i));
  }
  std::vector<Polynomial<F>> variables() const {
    std::vector<Polynomial<F>> v;
    for (std::size_t i = 0; i < nvars(); ++i) v.push_back(variable(i));
    return v;
  }

  /// All monomials of weighted degree `deg`, in descending order.
  std::vector<Monomial> monomials_of_degree(std::int32_t deg) const {
    std::vector<Monomial> out;
    if (deg < 0) return out;
    Monomial cur;
    enumerate(0, deg, cur, out);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return order_.compare(a, b) > 0; });
    return out;
  }

  /// A uniformly random form of the given degree (zero if no monomials).
  Polynomial<F> random_form(std::int32_t deg, std::mt19937_64& rng) const {
    Polynomial<F> p(this);
    for (const auto& m : monomials_of_degree(deg)) {
      auto c = field_.random(rng);
      if (!field_.is_zero(c)) p.terms.push_back({m, c});
    }
    return p;
  }

  bool same_as(const PolyRing& o) const {
    return this == &o || (field_ == o.field_ && names_ == o.names_ && order_ == o.order_);
  }

 private:
  void enumerate(std::size_t var, std::int32_t left, Monomial& cur,
                 std::vector<Monomial>& out) const {
    if (var == nvars()) {
      if (left == 0) {
        Monomial m = cur;
        m.deg = order_.degree_of(m);
        out.push_back(m);
      }
      return;
    }
    const std::int32_t w = order_.weights()[var];
    for (std::int32_t e = 0; e * w <= left; ++e) {
      cur.exp[var] = static_cast<std::uint16_t>(e);
      enumerate(var + 1, left - e * w, cur, out);
    }
    cur.exp[var] = 0;
  }

  F field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <CoefficientField F>
using PolyRingPtr = std::shared_ptr<const PolyRing<F>>;

/// Sparse polynomial; terms strictly descending in the ring's order with
/// nonzero coefficients. Holds a non-owning pointer to its ring, which must
/// outlive it.
template <CoefficientField F>
class Polynomial {
 public:
  using value_type = typename F::value_type;
  struct Term {
    Monomial m;
    value_type c;
  };

  Polynomial() = default;
  explicit Polynomial(const PolyRing<F>* r) : ring_(r) {}

  const PolyRing<F>* ring() const { return ring_; }
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].m.deg == 0); }
  std::size_t size() const { return terms.size(); }
  const Term& lead() const { return terms.front(); }
  const Monomial& lead_monomial() const { return terms.front().m; }
  const value_type& lead_coeff() const { return terms.front().c; }

  /// Maximal weighted degree of a term; -1 for zero.
  std::int32_t degree() const {
    std::int32_t d = -1;
    for (const auto& t : terms) d = std::max(d, t.m.deg);
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms)
      if (t.m.deg != terms.front().m.deg) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms) t.c = field().neg(t.c);
    return r;
  }
  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial operator*(const Polynomial& o) const {
    check_ring(o);
    Polynomial r(ring_);
    if (is_zero() || o.is_zero()) return r;
    if (o.terms.size() == 1) return mul_term(o.terms[0].c, o.terms[0].m);
    if (terms.size() == 1) return o.mul_term(terms[0].c, terms[0].m);
    std::unordered_map<Monomial, value_type, MonomialHash> acc;
    acc.reserve(terms.size() * o.terms.size());
    const F& k = field();
    for (const auto& a : terms)
      for (const auto& b : o.terms) {
        Monomial m = mono_mul(a.m, b.m);
        auto [it, fresh] = acc.try_emplace(m, k.zero());
        it->second = k.add(it->second, k.mul(a.c, b.c));
      }
    for (auto& [m, c] : acc)
      if (!k.is_zero(c)) r.terms.push_back({m, c});
    r.sort_terms();
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const value_type& c) const {
    Polynomial r(ring_);
    if (field().is_zero(c)) return r;
    r.terms.reserve(terms.size());
    for (const auto& t : terms) r.terms.push_back({t.m, field().mul(t.c, c)});
    return r;
  }
  Polynomial mul_term(const value_type& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (field().is_zero(c)) return r;
    r.terms.reserve(terms.size());
    for (const auto& t : terms) r.terms.push_back({mono_mul(t.m, m), field().mul(t.c, c)});
    return r;
  }
  Polynomial pow(unsigned e) const {
    Polynomial result = ring_->one(), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }
  Polynomial monic() const {
    if (is_zero()) return *this;
    return scale(field().inv(lead_coeff()));
  }

  bool operator==(const Polynomial& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (!(terms[i].m == o.terms[i].m) || !field().equal(terms[i].c, o.terms[i].c))
        return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Restores the descending-order invariant after manual construction.
  void sort_terms() {
    const auto& ord = ring_->order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
  }
  /// Sorts, merges equal monomials and drops zeros.
  void normalize() {
    sort_terms();
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().m == t.m)
        out.back().c = field().add(out.back().c, t.c);
      else
        out.push_back(t);
      if (field().is_zero(out.back().c)) out.pop_back();
    }
    terms = std::move(out);
  }

  const F& field() const { return ring_->field(); }

 private:
  void check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_ && !(ring_ && o.ring_ && ring_->same_as(*o.ring_)))
      fail(ErrorKind::kRingMismatch, "polynomials from different rings");
  }
  Polynomial combine(const Polynomial& o, bool subtract) const {
    check_ring(o);
    Polynomial r(ring_ ? ring_ : o.ring_);
    if (!r.ring_) return r;
    const F& k = r.field();
    const auto& ord = r.ring_->order();
    r.terms.reserve(terms.size() + o.terms.size());
    std::size_t i = 0, j = 0;
    while (i < terms.size() || j < o.terms.size()) {
      int c = i == terms.size() ? -1 : j == o.terms.size() ? 1 : ord.compare(terms[i].m, o.terms[j].m);
      if (c > 0) {
        r.terms.push_back(terms[i++]);
      } else if (c < 0) {
        const auto& t = o.terms[j++];
        r.terms.push_back({t.m, subtract ? k.neg(t.c) : t.c});
      } else {
        auto v = subtract ? k.sub(terms[i].c, o.terms[j].c) : k.add(terms[i].c, o.terms[j].c);
        if (!k.is_zero(v)) r.terms.push_back({terms[i].m, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  const PolyRing<F>* ring_ = nullptr;
};

}  // namespace arw
