#pragma once

#include <vector>

#include "arw/groebner/engine.hpp"

namespace arw::gb {

template <CoefficientField F>
Vec<F> to_vec(const Polynomial<F>& p, std::uint32_t comp = 0) {
  Vec<F> v;
  v.reserve(p.terms.size());
  for (const auto& t : p.terms) v.push_back({t.m, comp, t.c});
  return v;
}

/// Dense column of polynomials to a sparse vector (components offset by
/// `shift`). Terms come out sorted for `ord`.
template <CoefficientField F>
Vec<F> column_to_vec(const std::vector<Polynomial<F>>& col, const ModuleOrder& ord,
                     std::uint32_t shift = 0) {
  Vec<F> v;
  for (std::size_t i = 0; i < col.size(); ++i)
    for (const auto& t : col[i].terms) v.push_back({t.m, static_cast<std::uint32_t>(i) + shift, t.c});
  sort_vec(v, ord);
  return v;
}

/// Sparse vector back to a dense column of length `rank`, reading
/// components [shift, shift + rank).
template <CoefficientField F>
std::vector<Polynomial<F>> vec_to_column(const Vec<F>& v, const PolyRing<F>* ring,
                                         std::size_t rank, std::uint32_t shift = 0) {
  std::vector<Polynomial<F>> col(rank, Polynomial<F>(ring));
  for (const auto& t : v) {
    if (t.comp < shift || t.comp >= shift + rank) continue;
    col[t.comp - shift].terms.push_back({t.m, t.c});
  }
  for (auto& p : col) p.sort_terms();
  return col;
}

template <CoefficientField F>
Polynomial<F> vec_to_poly(const Vec<F>& v, const PolyRing<F>* ring) {
  Polynomial<F> p(ring);
  for (const auto& t : v) p.terms.push_back({t.m, t.c});
  p.sort_terms();
  return p;
}

/// Rank-one module order for ideal computations.
inline ModuleOrder ideal_order(const MonomialOrder& mo) { return ModuleOrder(mo, {0}); }

}  // namespace arw::gb
