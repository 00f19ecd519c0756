#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "arw/ring/monomial.hpp"

namespace arw {

/// Laurent polynomial in t with integer coefficients; used for Hilbert
/// series numerators K(t) with HS = K(t) / prod_i (1 - t^{w_i}).
class LaurentPoly {
 public:
  std::map<std::int32_t, std::int64_t> c;

  static LaurentPoly one() { return monomial(0, 1); }
  static LaurentPoly monomial(std::int32_t e, std::int64_t v) {
    LaurentPoly p;
    if (v) p.c[e] = v;
    return p;
  }
  bool is_zero() const { return c.empty(); }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto [e, v] : o.c) add(e, v);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (auto [e, v] : o.c) add(e, -v);
    return *this;
  }
  LaurentPoly operator+(const LaurentPoly& o) const { LaurentPoly r = *this; return r += o; }
  LaurentPoly operator-(const LaurentPoly& o) const { LaurentPoly r = *this; return r -= o; }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto [e1, v1] : c)
      for (auto [e2, v2] : o.c) r.add(e1 + e2, v1 * v2);
    return r;
  }
  LaurentPoly shifted(std::int32_t s) const {
    LaurentPoly r;
    for (auto [e, v] : c) r.c[e + s] = v;
    return r;
  }
  bool operator==(const LaurentPoly& o) const { return c == o.c; }

  void add(std::int32_t e, std::int64_t v) {
    if (!v) return;
    auto& slot = c[e];
    slot += v;
    if (!slot) c.erase(e);
  }
};

namespace detail {

inline void minimalize_monomials(std::vector<Monomial>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.exp < b.exp;
  });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (mono_divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  gens = std::move(out);
}

inline int support_size(const Monomial& m, std::size_t nvars) {
  int s = 0;
  for (std::size_t i = 0; i < nvars; ++i) s += m.exp[i] != 0;
  return s;
}

inline LaurentPoly numerator_rec(std::vector<Monomial> gens, const std::vector<std::int32_t>& w) {
  const std::size_t n = w.size();
  minimalize_monomials(gens);
  if (gens.empty()) return LaurentPoly::one();
  bool all_pure = true;
  for (const auto& g : gens)
    if (support_size(g, n) > 1) {
      all_pure = false;
      break;
    }
  if (all_pure) {
    LaurentPoly r = LaurentPoly::one();
    for (const auto& g : gens) {
      if (g.deg == 0) return LaurentPoly{};  // unit ideal
      r = r * (LaurentPoly::one() - LaurentPoly::monomial(g.deg, 1));
    }
    return r;
  }
  // Bigatti-style pivot: most frequent variable among mixed generators,
  // median exponent.
  std::vector<int> count(n, 0);
  for (const auto& g : gens)
    if (support_size(g, n) > 1)
      for (std::size_t i = 0; i < n; ++i) count[i] += g.exp[i] != 0;
  std::size_t v = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<int> es;
  for (const auto& g : gens)
    if (support_size(g, n) > 1 && g.exp[v]) es.push_back(g.exp[v]);
  std::sort(es.begin(), es.end());
  int e = es[es.size() / 2];
  Monomial p;
  p.exp[v] = static_cast<std::uint16_t>(e);
  p.deg = w[v] * e;

  std::vector<Monomial> plus = gens;
  plus.push_back(p);
  std::vector<Monomial> colon;
  colon.reserve(gens.size());
  for (auto g : gens) {
    int ge = g.exp[v];
    int ne = std::max(0, ge - e);
    g.deg -= w[v] * (ge - ne);
    g.exp[v] = static_cast<std::uint16_t>(ne);
    colon.push_back(g);
  }
  LaurentPoly r = numerator_rec(std::move(plus), w);
  r += numerator_rec(std::move(colon), w).shifted(p.deg);
  return r;
}

}  // namespace detail

/// Numerator K(t) of the Hilbert series of S/(monomial ideal generated by
/// `gens`) where S has the given variable weights.
inline LaurentPoly hilbert_numerator(std::vector<Monomial> gens, const std::vector<std::int32_t>& weights) {
  return detail::numerator_rec(std::move(gens), weights);
}

/// Coefficients of K(t) / prod (1 - t^{w_i}) in degrees [lo, hi].
inline std::vector<std::int64_t> expand_series(const LaurentPoly& num,
                                               const std::vector<std::int32_t>& weights,
                                               std::int32_t lo, std::int32_t hi) {
  std::vector<std::int64_t> out;
  if (hi < lo) return out;
  if (num.is_zero()) return std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo + 1), 0);
  std::int32_t base = std::min(lo, num.c.begin()->first);
  std::vector<std::int64_t> a(static_cast<std::size_t>(hi - base + 1), 0);
  for (auto [e, v] : num.c)
    if (e <= hi) a[static_cast<std::size_t>(e - base)] += v;
  for (auto w : weights)
    for (std::size_t d = static_cast<std::size_t>(w); d < a.size(); ++d) a[d] += a[d - static_cast<std::size_t>(w)];
  for (std::int32_t d = lo; d <= hi; ++d) out.push_back(a[static_cast<std::size_t>(d - base)]);
  return out;
}

/// Order of the pole at t = 1 of K(t) / prod (1 - t^{w_i}); this is the
/// Krull dimension of the graded module. -1 for the zero series.
inline int pole_order(const LaurentPoly& num, std::size_t nvars) {
  if (num.is_zero()) return -1;
  std::int32_t lo = num.c.begin()->first, hi = num.c.rbegin()->first;
  std::vector<std::int64_t> k(static_cast<std::size_t>(hi - lo + 1), 0);
  for (auto [e, v] : num.c) k[static_cast<std::size_t>(e - lo)] = v;
  int ord = 0;
  while (true) {
    std::int64_t at1 = 0;
    for (auto v : k) at1 += v;
    if (at1 != 0 || k.size() <= 1) break;
    // divide by (1 - t): q_i = sum_{j<=i} k_j
    std::vector<std::int64_t> q(k.size() - 1);
    std::int64_t run = 0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      run += k[i];
      q[i] = run;
    }
    k = std::move(q);
    ++ord;
  }
  return static_cast<int>(nvars) - ord;
}

/// Krull dimension of S/(monomial ideal) via maximal independent sets:
/// the largest variable set U with no generator supported inside U.
inline int dimension_from_leads(const std::vector<Monomial>& leads, std::size_t nvars) {
  std::vector<std::uint32_t> supports;
  for (const auto& m : leads) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.exp[i]) s |= 1u << i;
    if (s == 0) return -1;  // unit ideal
    supports.push_back(s);
  }
  int best = 0;
  const std::uint32_t full = nvars == 32 ? ~0u : (1u << nvars);
  for (std::uint32_t u = 0; u < full; ++u) {
    int sz = __builtin_popcount(u);
    if (sz <= best) continue;
    bool indep = true;
    for (auto s : supports)
      if ((s & ~u) == 0) {
        indep = false;
        break;
      }
    if (indep) best = sz;
  }
  return best;
}

}  // namespace arw
