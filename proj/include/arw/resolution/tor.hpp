#pragma once

#include <utility>

#include "arw/resolution/free_resolution.hpp"

namespace arw {

/// Tor_i(R/I, M) as H_i(F_• ⊗ M) for the minimal resolution F_• of R/I.
template <CoefficientField F>
Subquotient<F> tor(std::size_t i, const Ideal<F>& I, const Subquotient<F>& M) {
  require(I.ring().same_as(M.ring()), ErrorKind::kRingMismatch, "tor of modules over different rings");
  require(i >= 1, ErrorKind::kInvalidArgument, "Tor index must be at least 1");
  auto res = free_resolution(Subquotient<F>::cyclic(I), i + 1);
  return tensor_with_module(res.complex, M)[i];
}

/// The same Tor computed by resolving M instead: H_i(R/I ⊗ G_•).
template <CoefficientField F>
Subquotient<F> tor_by_resolving_module(std::size_t i, const Ideal<F>& I, const Subquotient<F>& M) {
  auto res = free_resolution(M, i + 1);
  return tensor_with_module(res.complex, Subquotient<F>::cyclic(I))[i];
}

/// Left side (I^n F_{i-1} ∩ im ∂_i) / (I^n im ∂_i), as a subquotient of
/// F_{i-1}, for a resolution of M computed to at least index i.
template <CoefficientField F>
Subquotient<F> tor_uar_left(const Resolution<F>& res, const Ideal<F>& I, std::size_t i, int n) {
  require(i >= 1 && i <= res.length_computed, ErrorKind::kInvalidArgument,
          "index " + std::to_string(i) + " outside the computed resolution");
  require(n >= 1, ErrorKind::kInvalidArgument, "power must be at least 1");
  const auto& Fi = res.free_module(i - 1);
  auto In = ideal_power(I, n);
  auto im = image(res.differential(i));
  auto cap = module_intersection(ideal_times(In, Fi), im);
  auto small = ideal_times(In, im);
  return Subquotient<F>(Fi, cap.generators(), small.generators());
}

/// Compares both sides of
///   (I^n F_{i-1} ∩ im ∂_i) / (I^n im ∂_i) ≅ Tor_i(R/I^n, M)
/// by Hilbert series, which is Hilbert-function equality in every degree.
template <CoefficientField F>
bool tor_uar_crosscheck(const Subquotient<F>& M, const Ideal<F>& I, std::size_t i, int n) {
  require(i >= 1, ErrorKind::kInvalidArgument, "Tor index must be at least 1");
  auto res = free_resolution(M, i);
  auto left = tor_uar_left(res, I, i, n);
  auto right = tor(i, ideal_power(I, n), res.resolved);
  return left.hilbert_series() == right.hilbert_series();
}

}  // namespace arw
