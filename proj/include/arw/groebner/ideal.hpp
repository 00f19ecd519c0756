#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "arw/groebner/convert.hpp"
#include "arw/groebner/engine.hpp"
#include "arw/groebner/hilbert.hpp"
#include "arw/groebner/syzygy.hpp"
#include "arw/ring/quotient_ring.hpp"

namespace arw {

/// Ideal of R = S/J, represented by generators in normal form. Gröbner
/// computations happen on the lift I + J in S; the basis is computed lazily
/// once and then shared read-only between copies.
template <CoefficientField F>
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr<F> ring, const std::vector<Polynomial<F>>& gens) : ring_(std::move(ring)) {
    require(ring_ != nullptr, ErrorKind::kInvalidArgument, "ideal without a ring");
    for (const auto& g : gens) {
      auto nf = ring_->normal_form(g);
      if (nf.is_zero()) continue;
      bool dup = false;
      for (const auto& h : gens_)
        if (h == nf) dup = true;
      if (!dup) gens_.push_back(std::move(nf));
    }
    cache_ = std::make_shared<Cache>();
  }
  Ideal(RingPtr<F> ring, const std::vector<std::string>& gens)
      : Ideal(ring, parse_all(*ring, gens)) {}

  static Ideal zero(RingPtr<F> ring) { return Ideal(std::move(ring), std::vector<Polynomial<F>>{}); }
  static Ideal unit(RingPtr<F> ring) {
    auto one = ring->one();
    return Ideal(std::move(ring), std::vector<Polynomial<F>>{one});
  }
  /// The irrelevant ideal generated by the variables.
  static Ideal maximal(RingPtr<F> ring) {
    auto v = ring->variables();
    return Ideal(std::move(ring), v);
  }

  const QuotientRing<F>& ring() const { return *ring_; }
  const RingPtr<F>& ring_ptr() const { return ring_; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  /// Reduced Gröbner basis of I + J in the ambient ring, as rank-one vectors.
  const std::vector<gb::Vec<F>>& lifted_basis() const {
    std::call_once(cache_->once, [&] {
      std::vector<gb::GBInput<F>> in;
      for (const auto& g : ring_->defining_vecs()) in.push_back({g, true});
      for (const auto& g : gens_) in.push_back({gb::to_vec(g), false});
      cache_->basis = gb::groebner(ring_->field(), order(), std::move(in), {.product_criterion = true}).basis;
    });
    return cache_->basis;
  }

  /// Reduced Gröbner basis of I in R: the lifted basis without the
  /// elements that vanish in R.
  std::vector<Polynomial<F>> groebner_basis() const {
    std::vector<Polynomial<F>> out;
    for (const auto& v : lifted_basis()) {
      auto p = gb::vec_to_poly(v, &ring_->ambient());
      if (!ring_->is_zero(p)) out.push_back(std::move(p));
    }
    return out;
  }

  Polynomial<F> reduce(const Polynomial<F>& f) const {
    ring_->check(f);
    if (f.is_zero()) return ring_->zero();
    return gb::vec_to_poly(gb::normal_form(ring_->field(), order(), lifted_basis(), gb::to_vec(f)),
                           &ring_->ambient());
  }
  bool contains(const Polynomial<F>& f) const { return reduce(f).is_zero(); }
  bool contains(const Ideal& o) const {
    check_ring(o);
    for (const auto& g : o.gens_)
      if (!contains(g)) return false;
    return true;
  }
  bool equals(const Ideal& o) const { return contains(o) && o.contains(*this); }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const {
    for (const auto& g : lifted_basis())
      if (g.front().m.is_one()) return true;
    return false;
  }
  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

  std::vector<Monomial> initial_generators() const {
    std::vector<Monomial> out;
    for (const auto& g : lifted_basis()) out.push_back(g.front().m);
    return out;
  }

  /// Krull dimension of R/I from the initial ideal; -1 when I = R.
  int dimension() const { return dimension_from_leads(initial_generators(), ring_->nvars()); }

  LaurentPoly hilbert_numerator() const {
    return arw::hilbert_numerator(initial_generators(), ring_->ambient().weights());
  }

  /// dim_k (R/I)_e for e in [lo, hi].
  std::vector<std::int64_t> hilbert_function(std::int32_t lo, std::int32_t hi) const {
    require(is_homogeneous(), ErrorKind::kNotHomogeneous, "Hilbert function of a non-homogeneous ideal");
    return expand_series(hilbert_numerator(), ring_->ambient().weights(), lo, hi);
  }

  /// Minimal homogeneous generating set (graded Nakayama).
  Ideal minimalized() const {
    if (!is_homogeneous()) return *this;
    std::vector<gb::Vec<F>> g;
    for (const auto& p : gens_) g.push_back(gb::to_vec(p));
    auto keep = gb::minimal_subset(ring_->field(), order(), g, ring_->defining_vecs());
    std::vector<Polynomial<F>> out;
    for (auto i : keep) out.push_back(gens_[i]);
    return Ideal(ring_, out);
  }

  std::string describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + to_string(gens_[i]);
    return s + ")";
  }

  gb::ModuleOrder order() const { return gb::ideal_order(ring_->ambient().order()); }

  void check_ring(const Ideal& o) const {
    if (!ring_->same_as(*o.ring_)) fail(ErrorKind::kRingMismatch, "ideals over different rings");
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<gb::Vec<F>> basis;
  };

  static std::vector<Polynomial<F>> parse_all(const QuotientRing<F>& R, const std::vector<std::string>& s) {
    std::vector<Polynomial<F>> out;
    for (const auto& t : s) out.push_back(R.parse(t));
    return out;
  }

  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
  std::shared_ptr<Cache> cache_;
};

template <CoefficientField F>
std::vector<Polynomial<F>> groebner_basis(const Ideal<F>& I) {
  return I.groebner_basis();
}

template <CoefficientField F>
bool ideal_membership(const Polynomial<F>& f, const Ideal<F>& I) {
  return I.contains(f);
}

template <CoefficientField F>
int krull_dimension(const Ideal<F>& I) {
  return I.dimension();
}

template <CoefficientField F>
std::vector<std::int64_t> hilbert_function(const Ideal<F>& I, std::int32_t lo, std::int32_t hi) {
  return I.hilbert_function(lo, hi);
}

template <CoefficientField F>
Ideal<F> ideal_sum(const Ideal<F>& I, const Ideal<F>& K) {
  I.check_ring(K);
  auto g = I.generators();
  g.insert(g.end(), K.generators().begin(), K.generators().end());
  return Ideal<F>(I.ring_ptr(), g);
}

template <CoefficientField F>
Ideal<F> ideal_sum(const Ideal<F>& I, const std::vector<Polynomial<F>>& extra) {
  auto g = I.generators();
  g.insert(g.end(), extra.begin(), extra.end());
  return Ideal<F>(I.ring_ptr(), g);
}

template <CoefficientField F>
Ideal<F> ideal_product(const Ideal<F>& I, const Ideal<F>& K) {
  I.check_ring(K);
  std::vector<Polynomial<F>> g;
  for (const auto& a : I.generators())
    for (const auto& b : K.generators()) g.push_back(a * b);
  return Ideal<F>(I.ring_ptr(), g);
}

/// I^n generated by all n-fold products of generators (I^0 = R).
template <CoefficientField F>
Ideal<F> ideal_power(const Ideal<F>& I, int n) {
  require(n >= 0, ErrorKind::kInvalidArgument, "ideal power must be nonnegative");
  Ideal<F> P = Ideal<F>::unit(I.ring_ptr());
  for (int e = 0; e < n; ++e) P = ideal_product(P, I);
  return P;
}

/// Homogeneous powers, pruned to minimal generators at each step.
template <CoefficientField F>
Ideal<F> ideal_power_minimal(const Ideal<F>& I, int n) {
  require(n >= 0, ErrorKind::kInvalidArgument, "ideal power must be nonnegative");
  Ideal<F> P = Ideal<F>::unit(I.ring_ptr());
  for (int e = 0; e < n; ++e) P = ideal_product(P, I).minimalized();
  return P;
}

/// (I : K) = {g : g K ⊆ I}, as the kernel of R -> (R/I)^s, g -> (g k_i).
template <CoefficientField F>
Ideal<F> ideal_quotient(const Ideal<F>& I, const Ideal<F>& K) {
  I.check_ring(K);
  const auto& R = I.ring();
  if (K.is_zero()) return Ideal<F>::unit(I.ring_ptr());
  const auto s = static_cast<std::uint32_t>(K.size());
  const auto& mo = R.ambient().order();
  gb::Vec<F> col;
  std::vector<std::int32_t> tdeg(s, 0);
  std::int32_t sdeg = 0;
  for (std::uint32_t i = 0; i < s; ++i) {
    const auto& k = K.generators()[i];
    tdeg[i] = -k.degree();
    for (const auto& t : k.terms) col.push_back({t.m, i, t.c});
  }
  std::vector<gb::Vec<F>> rels;
  for (std::uint32_t i = 0; i < s; ++i)
    for (const auto& g : I.lifted_basis()) {
      gb::Vec<F> v = g;
      for (auto& t : v) t.comp = i;
      rels.push_back(std::move(v));
    }
  std::vector<std::int32_t> cd = tdeg;
  cd.push_back(sdeg);
  gb::sort_vec(col, gb::ModuleOrder(mo, cd, s));
  auto ker = gb::kernel_mod(R.field(), mo, tdeg, {sdeg}, {col}, rels);
  std::vector<Polynomial<F>> out;
  for (const auto& v : ker) out.push_back(gb::vec_to_poly(v, &R.ambient()));
  return Ideal<F>(I.ring_ptr(), out);
}

template <CoefficientField F>
Ideal<F> ideal_quotient(const Ideal<F>& I, const Polynomial<F>& f) {
  require(!I.ring().is_zero(f), ErrorKind::kInvalidArgument, "colon by the zero element");
  return ideal_quotient(I, Ideal<F>(I.ring_ptr(), std::vector<Polynomial<F>>{f}));
}

/// (I : f^∞), iterating single colons until the chain stabilizes.
template <CoefficientField F>
Ideal<F> saturation(const Ideal<F>& I, const Polynomial<F>& f, int* steps = nullptr) {
  require(!I.ring().is_zero(f), ErrorKind::kInvalidArgument, "saturation by the zero element");
  Ideal<F> cur = I;
  int n = 0;
  while (true) {
    Ideal<F> next = ideal_quotient(cur, f);
    ++n;
    if (cur.contains(next)) break;
    cur = std::move(next);
  }
  if (steps) *steps = n;
  return cur;
}

template <CoefficientField F>
Ideal<F> saturation(const Ideal<F>& I, const Ideal<F>& K) {
  Ideal<F> cur = I;
  while (true) {
    Ideal<F> next = ideal_quotient(cur, K);
    if (cur.contains(next)) return cur;
    cur = std::move(next);
  }
}

/// I ∩ K through syzygies: a with sum a_j g_j ∈ K yields the element
/// sum a_j g_j of the intersection.
template <CoefficientField F>
Ideal<F> ideal_intersection(const Ideal<F>& I, const Ideal<F>& K) {
  I.check_ring(K);
  const auto& R = I.ring();
  if (I.is_zero() || K.is_zero()) return Ideal<F>::zero(I.ring_ptr());
  const auto& mo = R.ambient().order();
  std::vector<gb::Vec<F>> cols;
  std::vector<std::int32_t> sdeg;
  for (const auto& g : I.generators()) {
    cols.push_back(gb::to_vec(g));
    sdeg.push_back(g.degree());
  }
  auto ker = gb::kernel_mod(R.field(), mo, {0}, sdeg, cols, K.lifted_basis());
  std::vector<Polynomial<F>> out;
  for (const auto& v : ker) {
    Polynomial<F> e = R.zero();
    for (const auto& t : v) e += I.generators()[t.comp].mul_term(t.c, t.m);
    out.push_back(R.normal_form(e));
  }
  return Ideal<F>(I.ring_ptr(), out).minimalized();
}

/// I ∩ K by elimination: the t-free part of t·I + (1 - t)·K + J in S[t]
/// under an order eliminating t.
template <CoefficientField F>
Ideal<F> ideal_intersection_by_elimination(const Ideal<F>& I, const Ideal<F>& K) {
  I.check_ring(K);
  const auto& R = I.ring();
  const auto& S = R.ambient();
  require(S.nvars() + 1 <= kMaxVars, ErrorKind::kLimit, "no room for an elimination variable");
  std::vector<std::string> names{"_t"};
  for (const auto& n : S.names()) names.push_back(n);
  std::vector<std::int32_t> w{1};
  for (auto x : S.weights()) w.push_back(x);
  PolyRing<F> T(S.field(), names, OrderKind::kEliminationBlock, w, 1);
  auto lift = [&](const Polynomial<F>& p) {
    Polynomial<F> q(&T);
    for (const auto& term : p.terms) {
      Monomial m;
      for (std::size_t i = 0; i < S.nvars(); ++i) m.exp[i + 1] = term.m.exp[i];
      m.deg = T.order().degree_of(m);
      q.terms.push_back({m, term.c});
    }
    q.sort_terms();
    return q;
  };
  auto t = T.variable(0);
  auto one_minus_t = T.one() - t;
  std::vector<gb::GBInput<F>> in;
  for (const auto& g : R.defining()) in.push_back({gb::to_vec(lift(g)), true});
  for (const auto& g : I.generators()) in.push_back({gb::to_vec(t * lift(g)), false});
  for (const auto& g : K.generators()) in.push_back({gb::to_vec(one_minus_t * lift(g)), false});
  auto res = gb::groebner(S.field(), gb::ideal_order(T.order()), std::move(in), {.product_criterion = true});
  std::vector<Polynomial<F>> out;
  for (const auto& v : res.basis) {
    if (v.front().m.exp[0] != 0) continue;
    Polynomial<F> p(&S);
    for (const auto& term : v) {
      Monomial m;
      for (std::size_t i = 0; i < S.nvars(); ++i) m.exp[i] = term.m.exp[i + 1];
      m.deg = S.order().degree_of(m);
      p.terms.push_back({m, term.c});
    }
    p.sort_terms();
    out.push_back(R.normal_form(p));
  }
  return Ideal<F>(I.ring_ptr(), out).minimalized();
}

}  // namespace arw
