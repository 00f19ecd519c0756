#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "arw/ring/polynomial.hpp"

namespace arw::gb {

/// One term of a vector in a free module S^r.
template <CoefficientField F>
struct VTerm {
  Monomial m;
  std::uint32_t comp;
  typename F::value_type c;
};

/// Sparse module element, terms strictly descending in a ModuleOrder.
template <CoefficientField F>
using Vec = std::vector<VTerm<F>>;

/// Term order on S^r. Components at index >= split form a block that is
/// smaller than every term in components < split; within a block terms are
/// compared by twisted degree (degree-compatible base orders only), then by
/// the base order, then by component (lower index is larger).
class ModuleOrder {
 public:
  ModuleOrder() = default;
  ModuleOrder(MonomialOrder base, std::vector<std::int32_t> comp_deg,
              std::uint32_t split = 0)
      : base_(std::move(base)), comp_deg_(std::move(comp_deg)), split_(split) {}

  const MonomialOrder& base() const { return base_; }
  std::size_t rank() const { return comp_deg_.size(); }
  std::uint32_t split() const { return split_; }
  const std::vector<std::int32_t>& comp_degrees() const { return comp_deg_; }

  std::int32_t twisted_degree(const Monomial& m, std::uint32_t comp) const {
    return m.deg + comp_deg_[comp];
  }

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    if (split_) {
      bool ba = ca >= split_, bb = cb >= split_;
      if (ba != bb) return ba ? -1 : 1;
    }
    if (base_.degree_compatible()) {
      std::int32_t da = a.deg + comp_deg_[ca], db = b.deg + comp_deg_[cb];
      if (da != db) return da < db ? -1 : 1;
      if (int c = MonomialOrder::revlex(a, b, 0, base_.nvars())) return c;
    } else {
      if (int c = base_.compare(a, b)) return c;
    }
    if (ca != cb) return ca > cb ? -1 : 1;
    return 0;
  }

  template <CoefficientField F>
  int compare(const VTerm<F>& a, const VTerm<F>& b) const {
    return compare(a.m, a.comp, b.m, b.comp);
  }

 private:
  MonomialOrder base_;
  std::vector<std::int32_t> comp_deg_;
  std::uint32_t split_ = 0;
};

template <CoefficientField F>
void sort_vec(Vec<F>& v, const ModuleOrder& ord) {
  std::sort(v.begin(), v.end(),
            [&](const VTerm<F>& a, const VTerm<F>& b) { return ord.compare(a, b) > 0; });
}

/// Sorts, merges repeated terms and drops zeros.
template <CoefficientField F>
void normalize_vec(Vec<F>& v, const ModuleOrder& ord, const F& k) {
  sort_vec(v, ord);
  Vec<F> out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m)
      out.back().c = k.add(out.back().c, t.c);
    else
      out.push_back(std::move(t));
    if (k.is_zero(out.back().c)) out.pop_back();
  }
  v = std::move(out);
}

/// Maximal twisted degree of a term (the sugar of an input); -inf for 0.
template <CoefficientField F>
std::int32_t vec_degree(const Vec<F>& v, const ModuleOrder& ord) {
  std::int32_t d = std::numeric_limits<std::int32_t>::min();
  for (const auto& t : v) d = std::max(d, ord.twisted_degree(t.m, t.comp));
  return d;
}

template <CoefficientField F>
bool vec_homogeneous(const Vec<F>& v, const ModuleOrder& ord) {
  for (const auto& t : v)
    if (ord.twisted_degree(t.m, t.comp) != ord.twisted_degree(v.front().m, v.front().comp))
      return false;
  return true;
}

/// a - c * m * b, merged in order.
template <CoefficientField F>
Vec<F> sub_mul(const Vec<F>& a, std::size_t a_from, const typename F::value_type& c,
               const Monomial& m, const Vec<F>& b, const ModuleOrder& ord, const F& k) {
  Vec<F> r;
  r.reserve(a.size() - a_from + b.size());
  std::size_t i = a_from, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      r.push_back(a[i++]);
      continue;
    }
    Monomial bm = mono_mul(b[j].m, m);
    int cmp = i == a.size() ? -1 : ord.compare(a[i].m, a[i].comp, bm, b[j].comp);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({bm, b[j].comp, k.neg(k.mul(c, b[j].c))});
      ++j;
    } else {
      auto v = k.sub(a[i].c, k.mul(c, b[j].c));
      if (!k.is_zero(v)) r.push_back({a[i].m, a[i].comp, v});
      ++i;
      ++j;
    }
  }
  return r;
}

template <CoefficientField F>
Vec<F> make_monic(Vec<F> v, const F& k) {
  if (v.empty()) return v;
  auto inv = k.inv(v.front().c);
  for (auto& t : v) t.c = k.mul(t.c, inv);
  return v;
}

/// A set of reducers with a per-component lead index.
template <CoefficientField F>
class Reducer {
 public:
  Reducer(const F& k, const ModuleOrder& ord) : k_(k), ord_(ord), by_comp_(ord.rank()) {}

  void add(const Vec<F>* v) {
    by_comp_[v->front().comp].push_back(static_cast<std::uint32_t>(elems_.size()));
    elems_.push_back(v);
  }

  const Vec<F>* find(const Monomial& m, std::uint32_t comp) const {
    for (auto idx : by_comp_[comp]) {
      const Vec<F>* g = elems_[idx];
      if (mono_divides(g->front().m, m)) return g;
    }
    return nullptr;
  }

  /// Full normal form. With `top_only` the reduction stops at the first
  /// irreducible lead term.
  Vec<F> reduce(Vec<F> p, bool top_only = false) const {
    Vec<F> out;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const auto& t = p[pos];
      const Vec<F>* g = find(t.m, t.comp);
      if (!g) {
        if (top_only) {
          out.insert(out.end(), p.begin() + static_cast<std::ptrdiff_t>(pos), p.end());
          return out;
        }
        out.push_back(t);
        ++pos;
        continue;
      }
      auto c = k_.mul(t.c, k_.inv(g->front().c));
      Monomial q = mono_div(t.m, g->front().m);
      p = sub_mul(p, pos, c, q, *g, ord_, k_);
      pos = 0;
    }
    return out;
  }

  bool empty() const { return elems_.empty(); }

 private:
  const F& k_;
  const ModuleOrder& ord_;
  std::vector<const Vec<F>*> elems_;
  std::vector<std::vector<std::uint32_t>> by_comp_;
};

/// Options for a Buchberger run.
struct Options {
  /// Stop once every remaining pair/input has sugar above this bound; the
  /// result is then a basis only up to that degree (homogeneous input).
  std::int32_t degree_limit = std::numeric_limits<std::int32_t>::max();
  /// Apply the coprime-leads criterion (valid only for rank-one modules).
  bool product_criterion = false;
};

template <CoefficientField F>
struct GBInput {
  Vec<F> v;
  bool relation = false;
};

template <CoefficientField F>
struct GBResult {
  /// Reduced Gröbner basis, monic, sorted by ascending lead term.
  std::vector<Vec<F>> basis;
  /// Per input: 1 if it survived reduction when processed. For homogeneous
  /// input, the surviving non-relation inputs form a minimal generating set
  /// of the module modulo the relations.
  std::vector<char> minimal;
  bool truncated = false;
};

namespace detail {

struct Pair {
  std::uint32_t i, j;
  Monomial lcm;
  std::uint32_t comp;
  std::int32_t sugar;
};

}  // namespace detail

/// Buchberger's algorithm with Gebauer–Möller pair updates and the
/// sugar (normal) selection strategy; on homogeneous input the work
/// proceeds degree by degree.
template <CoefficientField F>
GBResult<F> groebner(const F& k, const ModuleOrder& ord, std::vector<GBInput<F>> inputs,
                     const Options& opt = {}) {
  using detail::Pair;
  GBResult<F> res;
  res.minimal.assign(inputs.size(), 0);

  std::vector<Vec<F>> basis;
  std::vector<std::int32_t> sugar;
  std::vector<char> active;
  std::vector<Pair> pairs;

  for (auto& in : inputs) normalize_vec(in.v, ord, k);

  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int32_t> in_sugar(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    in_sugar[i] = inputs[i].v.empty() ? std::numeric_limits<std::int32_t>::min()
                                      : vec_degree(inputs[i].v, ord);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (in_sugar[a] != in_sugar[b]) return in_sugar[a] < in_sugar[b];
    return inputs[a].relation && !inputs[b].relation;
  });
  std::size_t next_input = 0;
  while (next_input < order.size() && inputs[order[next_input]].v.empty()) ++next_input;

  const MonomialOrder& mo = ord.base();

  auto reducer_of_active = [&]() {
    Reducer<F> r(k, ord);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (active[i]) r.add(&basis[i]);
    return r;
  };

  auto update = [&](std::uint32_t h) {
    const Monomial& lh = basis[h].front().m;
    const std::uint32_t ch = basis[h].front().comp;
    struct Cand {
      std::uint32_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::uint32_t g = 0; g < h; ++g) {
      if (!active[g] || basis[g].front().comp != ch) continue;
      const Monomial& lg = basis[g].front().m;
      C.push_back({g, mono_lcm(lh, lg, mo), opt.product_criterion && mono_coprime(lh, lg)});
    }
    std::vector<Cand> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (mono_divides(C[b].lcm, C[a].lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (mono_divides(D[b].lcm, C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(C[a]);
    }
    // chain criterion on old pairs
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (auto& p : pairs) {
      if (p.comp == ch && mono_divides(lh, p.lcm)) {
        Monomial l1 = mono_lcm(basis[p.i].front().m, lh, mo);
        Monomial l2 = mono_lcm(basis[p.j].front().m, lh, mo);
        if (!(l1 == p.lcm) && !(l2 == p.lcm)) continue;
      }
      kept.push_back(p);
    }
    pairs = std::move(kept);
    for (auto& c : D) {
      if (c.coprime) continue;
      const auto& lg = basis[c.g].front().m;
      std::int32_t s = std::max(sugar[h] + (c.lcm.deg - lh.deg), sugar[c.g] + (c.lcm.deg - lg.deg));
      pairs.push_back({c.g, h, c.lcm, ch, s});
    }
    for (std::uint32_t g = 0; g < h; ++g)
      if (active[g] && basis[g].front().comp == ch && mono_divides(lh, basis[g].front().m))
        active[g] = 0;
  };

  auto insert = [&](Vec<F> v, std::int32_t s) {
    v = make_monic(std::move(v), k);
    basis.push_back(std::move(v));
    sugar.push_back(s);
    active.push_back(1);
    update(static_cast<std::uint32_t>(basis.size() - 1));
  };

  auto spoly = [&](const Pair& p) {
    const Vec<F>& a = basis[p.i];
    const Vec<F>& b = basis[p.j];
    Monomial ma = mono_div(p.lcm, a.front().m), mb = mono_div(p.lcm, b.front().m);
    Vec<F> sa;
    sa.reserve(a.size());
    for (const auto& t : a) sa.push_back({mono_mul(t.m, ma), t.comp, t.c});
    // both monic
    return sub_mul(sa, 0, k.one(), mb, b, ord, k);
  };

  while (true) {
    std::int32_t D = std::numeric_limits<std::int32_t>::max();
    for (const auto& p : pairs) D = std::min(D, p.sugar);
    if (next_input < order.size()) D = std::min(D, in_sugar[order[next_input]]);
    if (D == std::numeric_limits<std::int32_t>::max()) break;
    if (D > opt.degree_limit) {
      res.truncated = true;
      break;
    }
    std::vector<Pair> batch;
    std::vector<Pair> rest;
    for (auto& p : pairs) (p.sugar == D ? batch : rest).push_back(p);
    pairs = std::move(rest);
    std::sort(batch.begin(), batch.end(), [&](const Pair& a, const Pair& b) {
      if (int c = ord.compare(a.lcm, a.comp, b.lcm, b.comp)) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    for (const auto& p : batch) {
      Vec<F> s = spoly(p);
      if (s.empty()) continue;
      Reducer<F> red = reducer_of_active();
      s = red.reduce(std::move(s));
      if (!s.empty()) insert(std::move(s), p.sugar);
    }
    while (next_input < order.size() && in_sugar[order[next_input]] == D) {
      std::size_t idx = order[next_input++];
      Reducer<F> red = reducer_of_active();
      Vec<F> v = red.reduce(inputs[idx].v);
      if (!v.empty()) {
        res.minimal[idx] = 1;
        insert(std::move(v), D);
      }
    }
  }

  // interreduce the active elements
  std::vector<Vec<F>> final;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (active[i]) final.push_back(std::move(basis[i]));
  {
    Reducer<F> red(k, ord);
    for (auto& g : final) red.add(&g);
    std::vector<Vec<F>> out;
    out.reserve(final.size());
    for (auto& g : final) {
      Vec<F> tail(g.begin() + 1, g.end());
      Vec<F> r{g.front()};
      Vec<F> nt = red.reduce(std::move(tail));
      r.insert(r.end(), nt.begin(), nt.end());
      out.push_back(std::move(r));
    }
    final = std::move(out);
  }
  std::sort(final.begin(), final.end(), [&](const Vec<F>& a, const Vec<F>& b) {
    return ord.compare(a.front(), b.front()) < 0;
  });
  res.basis = std::move(final);
  return res;
}

/// Normal form with respect to a (reduced) basis.
template <CoefficientField F>
Vec<F> normal_form(const F& k, const ModuleOrder& ord, const std::vector<Vec<F>>& basis, Vec<F> v) {
  Reducer<F> red(k, ord);
  for (const auto& g : basis) red.add(&g);
  return red.reduce(std::move(v));
}

}  // namespace arw::gb
