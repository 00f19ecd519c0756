#pragma once

#include <vector>

#include "arw/groebner/engine.hpp"

namespace arw::gb {

/// Kernel of S^m -> S^r / L, where column j maps to cols[j] and L is spanned
/// by `rels`. Elimination on S^{r+m} with the target block dominant; the
/// returned vectors (components 0..m-1) form a Gröbner basis of the kernel.
/// Twisted degrees follow target_deg and source_deg, so homogeneous data
/// gives homogeneous syzygies.
template <CoefficientField F>
std::vector<Vec<F>> kernel_mod(const F& k, const MonomialOrder& mo,
                               const std::vector<std::int32_t>& target_deg,
                               const std::vector<std::int32_t>& source_deg,
                               const std::vector<Vec<F>>& cols, const std::vector<Vec<F>>& rels,
                               const Options& opt = {}) {
  const auto r = static_cast<std::uint32_t>(target_deg.size());
  std::vector<std::int32_t> cd = target_deg;
  cd.insert(cd.end(), source_deg.begin(), source_deg.end());
  ModuleOrder ord(mo, cd, r);
  std::vector<GBInput<F>> in;
  in.reserve(cols.size() + rels.size());
  for (const auto& v : rels) in.push_back({v, true});
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Vec<F> v = cols[j];
    v.push_back({Monomial{}, r + static_cast<std::uint32_t>(j), k.one()});
    in.push_back({std::move(v), false});
  }
  Options o = opt;
  o.product_criterion = false;
  auto res = groebner(k, ord, std::move(in), o);
  std::vector<Vec<F>> out;
  for (auto& g : res.basis) {
    if (g.front().comp < r) continue;
    for (auto& t : g) t.comp -= r;
    out.push_back(std::move(g));
  }
  return out;
}

/// Indices of a minimal generating subset of span(gens) modulo span(rels)
/// by graded Nakayama; inputs must be homogeneous for the twists in `ord`.
template <CoefficientField F>
std::vector<std::size_t> minimal_subset(const F& k, const ModuleOrder& ord,
                                        const std::vector<Vec<F>>& gens,
                                        const std::vector<Vec<F>>& rels) {
  std::vector<GBInput<F>> in;
  for (const auto& v : rels) in.push_back({v, true});
  for (const auto& v : gens) in.push_back({v, false});
  auto res = groebner(k, ord, std::move(in), {.product_criterion = ord.rank() == 1});
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (res.minimal[rels.size() + i]) keep.push_back(i);
  return keep;
}

}  // namespace arw::gb
