#pragma once

#include <vector>

#include "arw/groebner/syzygy.hpp"
#include "arw/modsys/subquotient.hpp"

namespace arw {

namespace detail {

template <CoefficientField F>
std::vector<gb::Vec<F>> to_vecs(const std::vector<Column<F>>& cols, const gb::ModuleOrder& ord,
                                std::uint32_t shift = 0) {
  std::vector<gb::Vec<F>> out;
  for (const auto& c : cols) {
    auto v = to_vec(c, ord, shift);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

template <CoefficientField F>
Column<F> reduce_column(const QuotientRing<F>& R, Column<F> c) {
  for (auto& p : c) p = R.normal_form(p);
  return c;
}

}  // namespace detail

/// Indices of a minimal subset of `cols` generating span(cols) + span(rels)
/// modulo span(rels), inside the free module with the given degrees.
/// Needs homogeneous data; otherwise every nonzero column is kept.
template <CoefficientField F>
std::vector<std::size_t> minimal_columns(const FreeModule<F>& ambient, const std::vector<Column<F>>& cols,
                                         const std::vector<Column<F>>& rels = {}) {
  const auto& R = *ambient.ring;
  bool homogeneous = true;
  for (const auto& c : cols) homogeneous = homogeneous && column_homogeneous(c, ambient.degrees);
  for (const auto& c : rels) homogeneous = homogeneous && column_homogeneous(c, ambient.degrees);
  std::vector<std::size_t> keep;
  if (!homogeneous) {
    SubmoduleBasis<F> rb(ambient, rels);
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (!rb.contains(cols[i])) keep.push_back(i);
    return keep;
  }
  auto ord = ambient.order();
  std::vector<gb::Vec<F>> g;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto v = detail::to_vec(cols[i], ord);
    if (v.empty()) continue;
    g.push_back(std::move(v));
    idx.push_back(i);
  }
  auto r = detail::to_vecs(rels, ord);
  auto d = detail::defining_relations(R, ambient.rank());
  r.insert(r.end(), d.begin(), d.end());
  for (auto i : gb::minimal_subset(R.field(), ord, g, r)) keep.push_back(idx[i]);
  return keep;
}

/// Generators a ∈ R^m (m = cols.size()) of {a : sum a_j cols_j ∈ span(rels)}
/// in the free module with the given target degrees. Source degrees should
/// make each column homogeneous of that degree. With `minimal` the result is
/// pruned by graded Nakayama.
template <CoefficientField F>
std::vector<Column<F>> kernel_columns(const FreeModule<F>& target, const std::vector<Column<F>>& cols,
                                      const std::vector<std::int32_t>& source_deg,
                                      const std::vector<Column<F>>& rels = {}, bool minimal = true) {
  const auto& R = *target.ring;
  const auto m = cols.size();
  if (m == 0) return {};
  auto tord = target.order();
  std::vector<gb::Vec<F>> cv;
  for (const auto& c : cols) cv.push_back(detail::to_vec(c, tord));
  auto rv = detail::to_vecs(rels, tord);
  auto d = detail::defining_relations(R, target.rank());
  rv.insert(rv.end(), d.begin(), d.end());
  auto ker = gb::kernel_mod(R.field(), R.ambient().order(), target.degrees, source_deg, cv, rv);
  std::vector<Column<F>> out;
  for (const auto& v : ker) {
    auto c = detail::reduce_column(R, gb::vec_to_column(v, &R.ambient(), m));
    if (!is_zero(c)) out.push_back(std::move(c));
  }
  if (!minimal) return out;
  FreeModule<F> src(target.ring, source_deg);
  std::vector<Column<F>> kept;
  for (auto i : minimal_columns(src, out)) kept.push_back(std::move(out[i]));
  return kept;
}

/// Kernel of phi as a map onto its source: columns generate ker(phi).
template <CoefficientField F>
ModuleMap<F> syzygy_matrix(const ModuleMap<F>& phi) {
  auto cols = kernel_columns(phi.target, phi.matrix.columns(), phi.source.degrees);
  Matrix<F> m(phi.source.rank(), cols);
  return ModuleMap<F>(FreeModule<F>(phi.source.ring, induced_source_degrees(m, phi.source.degrees)), phi.source, m);
}

/// Minimal generators of M (relations untouched).
template <CoefficientField F>
Subquotient<F> prune_generators(const Subquotient<F>& M) {
  auto keep = minimal_columns(M.ambient(), M.generators().columns(), M.relations().columns());
  std::vector<Column<F>> g;
  for (auto i : keep) g.push_back(M.generators().column(i));
  return Subquotient<F>(M.ambient(), Matrix<F>(M.ambient().rank(), g), M.relations());
}

/// Presentation psi: R^p -> R^m with M ≅ coker psi, where R^m maps onto the
/// generators of M (in the given order).
template <CoefficientField F>
ModuleMap<F> presentation(const Subquotient<F>& M) {
  FreeModule<F> gens(M.ring_ptr(), M.generator_degrees());
  auto cols = kernel_columns(M.ambient(), M.generators().columns(), gens.degrees, M.relations().columns());
  Matrix<F> m(gens.rank(), cols);
  return ModuleMap<F>(FreeModule<F>(M.ring_ptr(), induced_source_degrees(m, gens.degrees)), gens, m);
}

/// v ∈ N (generators plus relations).
template <CoefficientField F>
bool module_membership(const Column<F>& v, const Subquotient<F>& N) {
  return N.contains(v);
}

/// Every generator of A lies in span(B) (both submodules of one ambient).
template <CoefficientField F>
bool submodule_contains(const Subquotient<F>& B, const Subquotient<F>& A) {
  require(A.ambient() == B.ambient(), ErrorKind::kRingMismatch, "submodules of different free modules");
  for (const auto& c : A.generators().columns())
    if (!B.contains(c)) return false;
  for (const auto& c : A.relations().columns())
    if (!B.contains(c)) return false;
  return true;
}

template <CoefficientField F>
bool same_span(const Subquotient<F>& A, const Subquotient<F>& B) {
  return submodule_contains(A, B) && submodule_contains(B, A);
}

/// N1 ∩ N2 for submodules of a common free module: a with G1 a ∈ span G2
/// gives the element G1 a.
template <CoefficientField F>
Subquotient<F> module_intersection(const Subquotient<F>& N1, const Subquotient<F>& N2) {
  require(N1.ambient() == N2.ambient(), ErrorKind::kRingMismatch, "intersection of submodules of different free modules");
  require(N1.is_submodule() && N2.is_submodule(), ErrorKind::kPrecondition, "intersection needs submodules");
  const auto& R = N1.ring();
  const auto& A = N1.ambient();
  auto ker = kernel_columns(A, N1.generators().columns(), N1.generator_degrees(), N2.generators().columns(), false);
  std::vector<Column<F>> img;
  for (const auto& a : ker) {
    auto v = apply(R, N1.generators(), a);
    if (!is_zero(v)) img.push_back(std::move(v));
  }
  std::vector<Column<F>> kept;
  for (auto i : minimal_columns(A, img)) kept.push_back(img[i]);
  return Subquotient<F>::submodule(A, Matrix<F>(A.rank(), kept));
}

/// I·N for a submodule N (generators g·v).
template <CoefficientField F>
Subquotient<F> ideal_times(const Ideal<F>& I, const Subquotient<F>& N, bool minimal = true) {
  const auto& R = N.ring();
  std::vector<Column<F>> cols;
  for (const auto& g : I.generators())
    for (const auto& v : N.generators().columns()) {
      auto w = scale(R, v, g);
      if (!is_zero(w)) cols.push_back(std::move(w));
    }
  if (minimal) {
    std::vector<Column<F>> kept;
    for (auto i : minimal_columns(N.ambient(), cols)) kept.push_back(cols[i]);
    cols = std::move(kept);
  }
  return Subquotient<F>(N.ambient(), Matrix<F>(N.ambient().rank(), cols), N.relations());
}

/// I·F for the whole free module F.
template <CoefficientField F>
Subquotient<F> ideal_times(const Ideal<F>& I, const FreeModule<F>& A) {
  std::vector<Column<F>> cols;
  for (std::size_t k = 0; k < A.rank(); ++k)
    for (const auto& g : I.generators()) {
      auto v = A.zero_vector();
      v[k] = g;
      cols.push_back(std::move(v));
    }
  return Subquotient<F>::submodule(A, Matrix<F>(A.rank(), cols));
}

template <CoefficientField F>
Subquotient<F> submodule_sum(const Subquotient<F>& A, const Subquotient<F>& B) {
  require(A.ambient() == B.ambient(), ErrorKind::kRingMismatch, "sum of submodules of different free modules");
  auto cols = A.generators().columns();
  cols.insert(cols.end(), B.generators().columns().begin(), B.generators().columns().end());
  return Subquotient<F>::submodule(A.ambient(), Matrix<F>(A.ambient().rank(), cols));
}

/// Ann_R(M) = {r : r g_j ∈ span(rels) for all j}, as the kernel of
/// R -> ⊕_j F/rels, 1 -> (g_j)_j.
template <CoefficientField F>
Ideal<F> annihilator(const Subquotient<F>& M) {
  const auto& R = M.ring();
  const auto& A = M.ambient();
  const auto r = A.rank();
  std::vector<Column<F>> gens;
  for (const auto& c : M.generators().columns())
    if (!M.is_zero_element(c)) gens.push_back(c);
  if (gens.empty()) return Ideal<F>::unit(M.ring_ptr());
  auto gdeg = induced_source_degrees(Matrix<F>(r, gens), A.degrees);
  std::vector<std::int32_t> tdeg;
  Column<F> big;
  std::vector<Column<F>> rels;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      tdeg.push_back(A.degrees[k] - gdeg[j]);
      big.push_back(gens[j][k]);
    }
  }
  const std::size_t total = r * gens.size();
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (const auto& c : M.relations().columns()) {
      Column<F> v(total, R.zero());
      for (std::size_t k = 0; k < r; ++k) v[j * r + k] = c[k];
      rels.push_back(std::move(v));
    }
  FreeModule<F> T(M.ring_ptr(), tdeg);
  auto ker = kernel_columns(T, {big}, {0}, rels, false);
  std::vector<Polynomial<F>> out;
  for (const auto& a : ker) out.push_back(a[0]);
  return Ideal<F>(M.ring_ptr(), out).minimalized();
}

/// (C :_N f) = {v ∈ N : f v ∈ C} for submodules C ⊆ N of one free module.
template <CoefficientField F>
Subquotient<F> colon_in(const Subquotient<F>& N, const Subquotient<F>& C, const Polynomial<F>& f) {
  const auto& R = N.ring();
  const auto& A = N.ambient();
  std::vector<Column<F>> fcols;
  for (const auto& v : N.generators().columns()) fcols.push_back(scale(R, v, f));
  auto gdeg = N.generator_degrees();
  auto fdeg = f.degree();
  for (auto& d : gdeg) d += fdeg;
  auto ker = kernel_columns(A, fcols, gdeg, C.generators().columns(), false);
  std::vector<Column<F>> img;
  for (const auto& a : ker) {
    auto v = apply(R, N.generators(), a);
    if (!is_zero(v)) img.push_back(std::move(v));
  }
  std::vector<Column<F>> kept;
  for (auto i : minimal_columns(A, img)) kept.push_back(img[i]);
  return Subquotient<F>::submodule(A, Matrix<F>(A.rank(), kept));
}

/// (J N :_N f^∞) = {v ∈ N : f^s v ∈ J N for some s}, by iterating single
/// colons until the chain stabilizes.
template <CoefficientField F>
Subquotient<F> colon_capture(const Subquotient<F>& N, const Ideal<F>& J, const Polynomial<F>& f,
                             int* iterations = nullptr) {
  require(N.is_submodule(), ErrorKind::kPrecondition, "colon_capture needs a submodule of a free module");
  require(!N.ring().is_zero(f), ErrorKind::kInvalidArgument, "colon by the zero element");
  Subquotient<F> cur = ideal_times(J, N);
  int it = 0;
  while (true) {
    auto next = colon_in(N, cur, f);
    ++it;
    if (submodule_contains(cur, next)) break;
    cur = std::move(next);
  }
  if (iterations) *iterations = it;
  return cur;
}

/// f·M = 0.
template <CoefficientField F>
bool kills(const Polynomial<F>& f, const Subquotient<F>& M) {
  const auto& R = M.ring();
  for (const auto& g : M.generators().columns())
    if (!M.is_zero_element(scale(R, g, f))) return false;
  return true;
}

/// (0 :_M I) = {v ∈ M : I v = 0}, as a subquotient with M's relations;
/// this is Hom(R/I, M) embedded in M.
template <CoefficientField F>
Subquotient<F> zero_colon(const Subquotient<F>& M, const std::vector<Polynomial<F>>& I) {
  const auto& R = M.ring();
  const auto& A = M.ambient();
  const auto r = A.rank();
  const auto& G = M.generators();
  if (I.empty()) return M;
  // block k sits in degrees shifted by -deg f_k so that every column is
  // homogeneous of its generator's degree
  std::vector<std::int32_t> tdeg;
  for (const auto& f : I)
    for (auto d : A.degrees) tdeg.push_back(d - (f.is_zero() ? 0 : f.degree()));
  std::vector<Column<F>> cols;
  for (const auto& g : G.columns()) {
    Column<F> big;
    for (const auto& f : I) {
      auto v = scale(R, g, f);
      big.insert(big.end(), v.begin(), v.end());
    }
    cols.push_back(std::move(big));
  }
  std::vector<Column<F>> rels;
  for (std::size_t k = 0; k < I.size(); ++k)
    for (const auto& c : M.relations().columns()) {
      Column<F> v(r * I.size(), R.zero());
      for (std::size_t i = 0; i < r; ++i) v[k * r + i] = c[i];
      rels.push_back(std::move(v));
    }
  FreeModule<F> T(M.ring_ptr(), tdeg);
  auto ker = kernel_columns(T, cols, M.generator_degrees(), rels, false);
  std::vector<Column<F>> img;
  for (const auto& a : ker) {
    auto v = apply(R, G, a);
    if (!M.is_zero_element(v)) img.push_back(std::move(v));
  }
  return Subquotient<F>(A, Matrix<F>(r, img), M.relations());
}

template <CoefficientField F>
std::vector<std::int64_t> module_hilbert_function(const Subquotient<F>& M, std::int32_t lo, std::int32_t hi) {
  return M.hilbert_function(lo, hi);
}

/// The submodule im(phi) ⊆ target.
template <CoefficientField F>
Subquotient<F> image(const ModuleMap<F>& phi) {
  return Subquotient<F>::submodule(phi.target, phi.matrix);
}

/// coker(phi) = target / im(phi).
template <CoefficientField F>
Subquotient<F> cokernel(const ModuleMap<F>& phi) {
  return Subquotient<F>::quotient(phi.target, phi.matrix);
}

}  // namespace arw
