#pragma once

// Independent linear-algebra oracles for tests: everything here works one
// graded piece at a time with Macaulay matrices and never calls the
// Buchberger engine.

#include <map>
#include <vector>

#include "arw/ring/polynomial.hpp"

namespace oracle {

using arw::CoefficientField;
using arw::Monomial;
using arw::Polynomial;
using arw::PolyRing;

/// A homogeneous element of S^r: one polynomial per component.
template <CoefficientField F>
using Column = std::vector<Polynomial<F>>;

/// Row-echelon span of vectors in one graded piece of S^r(-a).
template <CoefficientField F>
class DegreeSpan {
 public:
  using V = typename F::value_type;

  DegreeSpan(const PolyRing<F>& S, std::vector<std::int32_t> comp_deg, std::int32_t d)
      : S_(S), comp_deg_(std::move(comp_deg)), d_(d) {
    for (std::size_t c = 0; c < comp_deg_.size(); ++c)
      for (const auto& m : S_.monomials_of_degree(d_ - comp_deg_[c])) {
        index_[{c, key(m)}] = basis_.size();
        basis_.push_back({c, m});
      }
  }

  std::size_t ambient_dim() const { return basis_.size(); }
  std::size_t dim() const { return rows_.size(); }

  /// Adds every monomial multiple of `g` landing in degree d.
  void add_generator(const Column<F>& g) {
    std::int32_t gd = degree(g);
    if (gd == kZero || gd > d_) return;
    for (const auto& m : S_.monomials_of_degree(d_ - gd)) {
      Column<F> h;
      for (const auto& p : g) h.push_back(p.mul_term(S_.field().one(), m));
      add(to_row(h));
    }
  }

  bool contains(const Column<F>& v) const {
    auto r = to_row(v);
    reduce(r);
    for (const auto& x : r)
      if (!S_.field().is_zero(x)) return false;
    return true;
  }

  static constexpr std::int32_t kZero = -1000000;

  std::int32_t degree(const Column<F>& g) const {
    for (std::size_t c = 0; c < g.size(); ++c)
      if (!g[c].is_zero()) return g[c].lead_monomial().deg + comp_deg_[c];
    return kZero;
  }

 private:
  static std::vector<std::uint16_t> key(const Monomial& m) {
    return std::vector<std::uint16_t>(m.exp.begin(), m.exp.end());
  }

  std::vector<V> to_row(const Column<F>& v) const {
    std::vector<V> r(basis_.size(), S_.field().zero());
    for (std::size_t c = 0; c < v.size(); ++c)
      for (const auto& t : v[c].terms) {
        auto it = index_.find({c, key(t.m)});
        if (it == index_.end()) continue;  // wrong degree: caller's problem
        r[it->second] = S_.field().add(r[it->second], t.c);
      }
    return r;
  }

  void reduce(std::vector<V>& r) const {
    const F& k = S_.field();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto p = pivots_[i];
      if (k.is_zero(r[p])) continue;
      auto c = r[p];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = k.sub(r[j], k.mul(c, rows_[i][j]));
    }
  }

  void add(std::vector<V> r) {
    const F& k = S_.field();
    reduce(r);
    std::size_t p = 0;
    while (p < r.size() && k.is_zero(r[p])) ++p;
    if (p == r.size()) return;
    auto inv = k.inv(r[p]);
    for (auto& x : r) x = k.mul(x, inv);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto c = rows_[i][p];
      if (k.is_zero(c)) continue;
      for (std::size_t j = 0; j < r.size(); ++j) rows_[i][j] = k.sub(rows_[i][j], k.mul(c, r[j]));
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
  }

  const PolyRing<F>& S_;
  std::vector<std::int32_t> comp_deg_;
  std::int32_t d_;
  std::vector<std::pair<std::size_t, Monomial>> basis_;
  std::map<std::pair<std::size_t, std::vector<std::uint16_t>>, std::size_t> index_;
  std::vector<std::vector<V>> rows_;
  std::vector<std::size_t> pivots_;
};

/// dim_k (S/(gens))_d for homogeneous generators.
template <CoefficientField F>
std::int64_t quotient_dim(const PolyRing<F>& S, const std::vector<Polynomial<F>>& gens, std::int32_t d) {
  DegreeSpan<F> sp(S, {0}, d);
  for (const auto& g : gens) sp.add_generator({g});
  return static_cast<std::int64_t>(sp.ambient_dim() - sp.dim());
}

/// Homogeneous membership f ∈ (gens) by linear algebra in degree deg f.
template <CoefficientField F>
bool ideal_contains(const PolyRing<F>& S, const std::vector<Polynomial<F>>& gens, const Polynomial<F>& f) {
  if (f.is_zero()) return true;
  DegreeSpan<F> sp(S, {0}, f.lead_monomial().deg);
  for (const auto& g : gens) sp.add_generator({g});
  return sp.contains({f});
}

/// Homogeneous module membership v ∈ span(gens) ⊆ S^r(-a).
template <CoefficientField F>
bool module_contains(const PolyRing<F>& S, const std::vector<std::int32_t>& comp_deg,
                     const std::vector<Column<F>>& gens, const Column<F>& v) {
  DegreeSpan<F> probe(S, comp_deg, 0);
  std::int32_t d = probe.degree(v);
  if (d == DegreeSpan<F>::kZero) return true;
  DegreeSpan<F> sp(S, comp_deg, d);
  for (const auto& g : gens) sp.add_generator(g);
  return sp.contains(v);
}

/// Count of degree-d monomials outside a monomial ideal (staircase count).
inline std::int64_t standard_monomials(const std::vector<Monomial>& leads, const std::vector<Monomial>& all) {
  std::int64_t n = 0;
  for (const auto& m : all) {
    bool in = false;
    for (const auto& l : leads)
      if (arw::mono_divides(l, m)) in = true;
    n += !in;
  }
  return n;
}

/// Basis of the degree-d part of ker(S^m(-b) -> S^r(-a)) for a matrix given
/// by columns, via the null space of the coefficient matrix.
template <CoefficientField F>
std::vector<Column<F>> kernel_in_degree(const PolyRing<F>& S, const std::vector<Column<F>>& cols,
                                        const std::vector<std::int32_t>& source_deg,
                                        const std::vector<std::int32_t>& target_deg, std::int32_t d) {
  const F& k = S.field();
  using V = typename F::value_type;
  struct Unknown {
    std::size_t j;
    Monomial m;
  };
  std::vector<Unknown> unk;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& m : S.monomials_of_degree(d - source_deg[j])) unk.push_back({j, m});
  std::map<std::pair<std::size_t, std::vector<std::uint16_t>>, std::size_t> row_of;
  std::size_t nrows = 0;
  for (std::size_t r = 0; r < target_deg.size(); ++r)
    for (const auto& m : S.monomials_of_degree(d - target_deg[r]))
      row_of[{r, std::vector<std::uint16_t>(m.exp.begin(), m.exp.end())}] = nrows++;
  std::vector<std::vector<V>> A(nrows, std::vector<V>(unk.size(), k.zero()));
  for (std::size_t u = 0; u < unk.size(); ++u)
    for (std::size_t r = 0; r < target_deg.size(); ++r)
      for (const auto& t : cols[unk[u].j][r].terms) {
        auto m = arw::mono_mul(t.m, unk[u].m);
        auto it = row_of.find({r, std::vector<std::uint16_t>(m.exp.begin(), m.exp.end())});
        if (it != row_of.end()) A[it->second][u] = k.add(A[it->second][u], t.c);
      }
  // reduced row echelon form
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < unk.size() && row < nrows; ++c) {
    std::size_t p = row;
    while (p < nrows && k.is_zero(A[p][c])) ++p;
    if (p == nrows) continue;
    std::swap(A[p], A[row]);
    auto inv = k.inv(A[row][c]);
    for (auto& x : A[row]) x = k.mul(x, inv);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == row || k.is_zero(A[i][c])) continue;
      auto f = A[i][c];
      for (std::size_t cc = 0; cc < unk.size(); ++cc) A[i][cc] = k.sub(A[i][cc], k.mul(f, A[row][cc]));
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<char> is_piv(unk.size(), 0);
  for (auto c : pivcol) is_piv[c] = 1;
  std::vector<Column<F>> out;
  for (std::size_t fcol = 0; fcol < unk.size(); ++fcol) {
    if (is_piv[fcol]) continue;
    std::vector<V> x(unk.size(), k.zero());
    x[fcol] = k.one();
    for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = k.neg(A[i][fcol]);
    Column<F> v(cols.size(), S.zero());
    for (std::size_t u = 0; u < unk.size(); ++u)
      if (!k.is_zero(x[u])) v[unk[u].j] = v[unk[u].j] + S.term(x[u], unk[u].m);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace oracle
