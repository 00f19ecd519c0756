#pragma once

#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "arw/complexes/chain_complex.hpp"

namespace arw {

/// Grade of the unit ideal.
inline constexpr int kInfiniteGrade = std::numeric_limits<int>::max();

inline std::string grade_to_string(int g) { return g == kInfiniteGrade ? "inf" : std::to_string(g); }

inline constexpr std::size_t kDefaultMinorCap = 8;

namespace detail {

/// Nonzero r x r minors of A in R, keyed by (row subset, column subset) in
/// lexicographic order. Expands row by row over column bitmasks, reducing
/// into R at every level. With `stop_at_first` returns after one nonzero.
template <CoefficientField F>
std::vector<Polynomial<F>> minors_impl(const QuotientRing<F>& R, const Matrix<F>& A, std::size_t r, std::size_t cap,
                                       bool stop_at_first) {
  if (r == 0) return {R.one()};
  if (r > A.rows() || r > A.cols()) return {};
  require(r <= cap, ErrorKind::kLimit, "minors of size " + std::to_string(r) + " exceed the cap " + std::to_string(cap));
  require(A.cols() <= 64, ErrorKind::kLimit, "minor enumeration supports at most 64 columns");
  std::vector<Polynomial<F>> out;
  std::vector<std::size_t> rows(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = i;
  while (true) {
    // level t holds minors on the last t chosen rows
    std::map<std::uint64_t, Polynomial<F>> level{{0, R.one()}};
    for (std::size_t t = r; t-- > 0;) {
      std::map<std::uint64_t, Polynomial<F>> next;
      const auto row = rows[t];
      for (const auto& [mask, p] : level)
        for (std::size_t c = 0; c < A.cols(); ++c) {
          if (mask >> c & 1 || A(row, c).is_zero()) continue;
          int below = __builtin_popcountll(mask & ((std::uint64_t{1} << c) - 1));
          auto term = A(row, c) * p;
          auto& slot = next.try_emplace(mask | std::uint64_t{1} << c, R.zero()).first->second;
          if (below % 2) slot -= term;
          else slot += term;
        }
      level.clear();
      for (auto& [mask, p] : next) {
        auto q = R.normal_form(p);
        if (!q.is_zero()) level.emplace(mask, std::move(q));
      }
      if (level.empty()) break;
    }
    for (auto& [mask, p] : level) {
      out.push_back(std::move(p));
      if (stop_at_first) return out;
    }
    // next row subset
    std::size_t i = r;
    while (i-- > 0 && rows[i] == A.rows() - r + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++rows[i];
    for (std::size_t j = i + 1; j < r; ++j) rows[j] = rows[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// Distinct nonzero r x r minors (up to scalars), normal forms in R.
template <CoefficientField F>
std::vector<Polynomial<F>> minors(const QuotientRing<F>& R, const Matrix<F>& A, std::size_t r,
                                  std::size_t cap = kDefaultMinorCap) {
  std::vector<Polynomial<F>> out;
  std::set<std::string> seen;
  for (auto& p : detail::minors_impl(R, A, r, cap, false)) {
    auto m = p.monic();
    if (seen.insert(to_string(m)).second) out.push_back(std::move(m));
  }
  return out;
}

/// I_r(A); I_0 = R.
template <CoefficientField F>
Ideal<F> determinantal_ideal(const RingPtr<F>& R, const Matrix<F>& A, std::size_t r,
                             std::size_t cap = kDefaultMinorCap) {
  return Ideal<F>(R, minors(*R, A, r, cap));
}

/// max { r : I_r(A) != 0 in R }.
template <CoefficientField F>
std::size_t matrix_rank(const QuotientRing<F>& R, const Matrix<F>& A, std::size_t cap = kDefaultMinorCap) {
  std::size_t r = 0;
  while (r < std::min(A.rows(), A.cols()) && !detail::minors_impl(R, A, r + 1, cap, true).empty()) ++r;
  return r;
}

namespace detail {

/// n - max{i : H_i(g; R) != 0}.
template <CoefficientField F>
int koszul_grade(const RingPtr<F>& R, const std::vector<Polynomial<F>>& g) {
  auto K = koszul_complex(R, g);
  auto P = PresentedComplex<F>::from_free(K);
  for (std::size_t i = g.size(); i >= 1; --i)
    if (!P.homology(i).is_zero()) return static_cast<int>(g.size() - i);
  return static_cast<int>(g.size());
}

}  // namespace detail

/// Grade of I on R via Koszul homology. The unit ideal has grade
/// kInfiniteGrade, the zero ideal grade 0. For homogeneous I with more
/// generators than dim R, Koszul homology is taken on dim R random elements
/// of I_D (D the top generator degree) once they are verified to have the
/// same radical as I; otherwise on a minimal generating set.
template <CoefficientField F>
int grade_or_infinite(const Ideal<F>& I) {
  if (I.is_zero()) return 0;
  if (I.is_unit()) return kInfiniteGrade;
  const auto& Rp = I.ring_ptr();
  const auto& R = *Rp;
  auto J = I.minimalized();
  auto gens = J.generators();
  const auto d = static_cast<std::size_t>(std::max(1, R.dimension()));
  if (J.is_homogeneous() && gens.size() > d) {
    std::int32_t D = 0;
    for (const auto& f : gens) D = std::max(D, f.degree());
    std::mt19937_64 rng(0x5eedULL + gens.size());
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::vector<Polynomial<F>> g;
      for (std::size_t k = 0; k < d; ++k) {
        auto s = R.zero();
        for (const auto& f : gens) s += R.random_form(D - f.degree(), rng) * f;
        g.push_back(R.normal_form(s));
      }
      Ideal<F> G(Rp, g);
      bool same_radical = true;
      for (const auto& f : gens)
        if (!saturation(G, f).is_unit()) {
          same_radical = false;
          break;
        }
      if (same_radical) return detail::koszul_grade(Rp, G.generators());
    }
  }
  return detail::koszul_grade(Rp, gens);
}

/// Grade of a proper nonzero ideal.
template <CoefficientField F>
int grade(const Ideal<F>& I) {
  require(!I.is_zero(), ErrorKind::kPrecondition, "grade of the zero ideal");
  require(!I.is_unit(), ErrorKind::kPrecondition, "grade of the unit ideal");
  return grade_or_infinite(I);
}

/// Per differential: rank, I(∂_i) = I_rank(∂_i) and its grade.
template <CoefficientField F>
struct RankProfile {
  std::vector<std::size_t> ranks;       // ranks[i] = rank ∂_i, index 0 unused
  std::vector<Ideal<F>> ideals;         // ideals[i] = I(∂_i), index 0 unused
  std::vector<int> grades;              // grades[i] = grade I(∂_i), index 0 unused
  std::vector<bool> standard;           // standard[i]: rank G_i = rank ∂_i + rank ∂_{i+1}
  bool standard_conditions = true;
};

template <CoefficientField F>
RankProfile<F> rank_profile(const ChainComplex<F>& C, bool with_grades = true, std::size_t cap = kDefaultMinorCap) {
  const auto n = C.length();
  const auto& Rp = C.ring_ptr();
  RankProfile<F> p;
  p.ranks.assign(n + 2, 0);
  p.ideals.assign(n + 2, Ideal<F>::unit(Rp));
  p.grades.assign(n + 2, kInfiniteGrade);
  p.standard.assign(n + 1, true);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& A = C.differential(i).matrix;
    p.ranks[i] = matrix_rank(C.ring(), A, cap);
    p.ideals[i] = determinantal_ideal(Rp, A, p.ranks[i], cap);
    if (with_grades) p.grades[i] = grade_or_infinite(p.ideals[i]);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    p.standard[i] = C.module(i).rank() == p.ranks[i] + p.ranks[i + 1];
    p.standard_conditions = p.standard_conditions && p.standard[i];
  }
  p.ranks.resize(n + 1);
  p.ideals.resize(n + 1);
  p.grades.resize(n + 1);
  return p;
}

struct ExactnessFailure {
  std::size_t index;
  std::string condition;  // "rank" or "grade"
  std::string detail;
};

struct ExactnessCertificate {
  bool exact = true;
  std::vector<std::size_t> ranks;
  std::vector<int> grades;
  std::vector<ExactnessFailure> failures;

  std::string summary() const {
    if (exact) return "exact";
    std::string s = "not exact:";
    for (const auto& f : failures) s += " [i=" + std::to_string(f.index) + " " + f.condition + ": " + f.detail + "]";
    return s;
  }
};

/// Buchsbaum-Eisenbud: 0 -> G_n -> ... -> G_0 is exact (in positive
/// degrees) iff rank G_i = rank ∂_i + rank ∂_{i+1} and grade I(∂_i) >= i.
template <CoefficientField F>
ExactnessCertificate buchsbaum_eisenbud_exact(const ChainComplex<F>& C, std::size_t cap = kDefaultMinorCap) {
  auto p = rank_profile(C, false, cap);
  ExactnessCertificate cert;
  cert.ranks = p.ranks;
  cert.grades.assign(C.length() + 1, kInfiniteGrade);
  for (std::size_t i = 1; i <= C.length(); ++i) {
    const auto next = i < C.length() ? p.ranks[i + 1] : 0;
    if (!p.standard[i])
      cert.failures.push_back({i, "rank",
                               "rank G_" + std::to_string(i) + " = " + std::to_string(C.module(i).rank()) +
                                   " but rank d_" + std::to_string(i) + " + rank d_" + std::to_string(i + 1) + " = " +
                                   std::to_string(p.ranks[i] + next)});
    int g = grade_or_infinite(p.ideals[i]);
    cert.grades[i] = g;
    if (g < static_cast<int>(i))
      cert.failures.push_back({i, "grade",
                               "grade I(d_" + std::to_string(i) + ") = " + grade_to_string(g) + " < " +
                                   std::to_string(i)});
  }
  cert.exact = cert.failures.empty();
  return cert;
}

}  // namespace arw
