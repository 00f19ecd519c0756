#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arw/complexes/chain_complex.hpp"

namespace arw {

/// F_L -> ... -> F_1 -> F_0 (-> M -> 0), with F_0 mapping onto the
/// generators of `resolved` in order.
template <CoefficientField F>
struct Resolution {
  ChainComplex<F> complex;
  Subquotient<F> resolved;
  std::size_t length_computed = 0;
  bool minimal = false;
  /// The last computed kernel vanished: the resolution is finite and complete.
  bool complete = false;

  const FreeModule<F>& free_module(std::size_t i) const { return complex.module(i); }
  const ModuleMap<F>& differential(std::size_t i) const { return complex.differential(i); }

  std::vector<std::size_t> betti() const { return complex.ranks(); }

  /// graded[degree][i] = number of generators of F_i in that degree.
  std::map<std::int32_t, std::vector<std::size_t>> graded_betti() const {
    std::map<std::int32_t, std::vector<std::size_t>> t;
    for (std::size_t i = 0; i <= complex.length(); ++i)
      for (auto d : complex.module(i).degrees) {
        auto& row = t[d];
        row.resize(complex.length() + 1, 0);
        ++row[i];
      }
    return t;
  }

  /// Degree x homological-index grid.
  std::string betti_csv() const {
    std::ostringstream os;
    os << "degree";
    for (std::size_t i = 0; i <= complex.length(); ++i) os << "," << i;
    os << "\n";
    for (const auto& [d, row] : graded_betti()) {
      os << d;
      for (std::size_t i = 0; i <= complex.length(); ++i) os << "," << (i < row.size() ? row[i] : 0);
      os << "\n";
    }
    return os.str();
  }
};

namespace detail {

template <CoefficientField F>
bool entries_in_maximal_ideal(const Matrix<F>& m) {
  for (const auto& c : m.columns())
    for (const auto& p : c)
      for (const auto& t : p.terms)
        if (t.m.is_one()) return false;
  return true;
}

}  // namespace detail

/// Graded resolution computed to F_length by iterated syzygies. For
/// homogeneous M every step keeps a minimal generating set of the kernel
/// (graded Nakayama), so the resolution is minimal.
template <CoefficientField F>
Resolution<F> free_resolution(const Subquotient<F>& M, std::size_t length) {
  require(length >= 1, ErrorKind::kInvalidArgument, "resolution length must be at least 1");
  Resolution<F> res;
  const bool homogeneous = M.is_homogeneous();
  res.resolved = homogeneous ? prune_generators(M) : M;
  const auto& Rp = M.ring_ptr();
  std::vector<FreeModule<F>> mods{FreeModule<F>(Rp, res.resolved.generator_degrees())};
  std::vector<ModuleMap<F>> maps;
  auto psi = presentation(res.resolved);
  maps.push_back(psi);
  mods.push_back(psi.source);
  res.complete = psi.source.rank() == 0;
  for (std::size_t i = 2; i <= length; ++i) {
    const auto& prev = maps.back();
    auto cols = kernel_columns(prev.target, prev.matrix.columns(), prev.source.degrees);
    Matrix<F> m(prev.source.rank(), cols);
    maps.push_back(make_map(prev.source, m));
    mods.push_back(maps.back().source);
    if (cols.empty()) res.complete = true;
  }
  res.complex = ChainComplex<F>(std::move(mods), std::move(maps));
  res.length_computed = length;
  res.minimal = homogeneous;
  for (const auto& d : res.complex.differentials())
    res.minimal = res.minimal && detail::entries_in_maximal_ideal(d.matrix);
  return res;
}

/// Default length d + 2 with d = dim R.
template <CoefficientField F>
Resolution<F> free_resolution(const Subquotient<F>& M) {
  return free_resolution(M, static_cast<std::size_t>(std::max(0, M.ring().dimension())) + 2);
}

/// i-th syzygy module: im(∂_i) ⊆ F_{i-1} of the minimal resolution; i = 0
/// gives M.
template <CoefficientField F>
Subquotient<F> syzygy_module(const Subquotient<F>& M, std::size_t i) {
  if (i == 0) return M;
  auto res = free_resolution(M, i);
  return image(res.differential(i));
}

template <CoefficientField F>
Subquotient<F> syzygy_module(const Resolution<F>& res, std::size_t i) {
  if (i == 0) return res.resolved;
  require(i <= res.length_computed, ErrorKind::kInvalidArgument, "syzygy index beyond the computed resolution");
  return image(res.differential(i));
}

}  // namespace arw
