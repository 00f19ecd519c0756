#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "arw/modsys/operations.hpp"

namespace arw {

/// 0 -> G_n -> ... -> G_1 -> G_0 -> 0 of graded free modules.
/// modules()[i] is G_i; differential(i) is ∂_i : G_i -> G_{i-1} for 1 <= i <= n.
template <CoefficientField F>
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<FreeModule<F>> modules, std::vector<ModuleMap<F>> diffs)
      : modules_(std::move(modules)), diffs_(std::move(diffs)) {
    require(!modules_.empty(), ErrorKind::kInvalidArgument, "a complex needs at least G_0");
    require(diffs_.size() + 1 == modules_.size(), ErrorKind::kInvalidArgument,
            "a complex of length n needs n differentials");
    for (std::size_t i = 1; i <= length(); ++i) {
      const auto& d = diffs_[i - 1];
      require(d.source == modules_[i] && d.target == modules_[i - 1], ErrorKind::kInvalidArgument,
              "differential " + std::to_string(i) + " does not map G_" + std::to_string(i) + " to G_" +
                  std::to_string(i - 1));
    }
    for (std::size_t i = 1; i < length(); ++i)
      require(multiply(ring(), diffs_[i - 1].matrix, diffs_[i].matrix).is_zero(), ErrorKind::kPrecondition,
              "d_" + std::to_string(i) + " o d_" + std::to_string(i + 1) + " is not zero");
  }

  /// Builds G_i degrees from the matrices, starting from the degrees of G_0.
  static ChainComplex from_matrices(const RingPtr<F>& R, std::vector<std::int32_t> base_degrees,
                                    const std::vector<Matrix<F>>& mats) {
    std::vector<FreeModule<F>> mods{FreeModule<F>(R, std::move(base_degrees))};
    std::vector<ModuleMap<F>> maps;
    for (const auto& m : mats) {
      require(m.rows() == mods.back().rank(), ErrorKind::kInvalidArgument,
              "matrix " + std::to_string(maps.size() + 1) + " has " + std::to_string(m.rows()) +
                  " rows but the target has rank " + std::to_string(mods.back().rank()));
      maps.push_back(make_map(mods.back(), m));
      mods.push_back(maps.back().source);
    }
    return ChainComplex(std::move(mods), std::move(maps));
  }

  std::size_t length() const { return modules_.size() - 1; }
  const QuotientRing<F>& ring() const { return *modules_[0].ring; }
  const RingPtr<F>& ring_ptr() const { return modules_[0].ring; }
  const std::vector<FreeModule<F>>& modules() const { return modules_; }
  const FreeModule<F>& module(std::size_t i) const { return modules_.at(i); }
  const std::vector<ModuleMap<F>>& differentials() const { return diffs_; }
  const ModuleMap<F>& differential(std::size_t i) const {
    require(i >= 1 && i <= length(), ErrorKind::kInvalidArgument, "no differential d_" + std::to_string(i));
    return diffs_[i - 1];
  }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& m : modules_) r.push_back(m.rank());
    return r;
  }
  bool is_graded() const {
    for (const auto& d : diffs_)
      if (!d.is_graded()) return false;
    return true;
  }

  std::string describe() const {
    std::string s = "0";
    for (std::size_t i = length() + 1; i-- > 0;) s += " -> " + modules_[i].describe();
    return s + " -> 0";
  }

 private:
  std::vector<FreeModule<F>> modules_;
  std::vector<ModuleMap<F>> diffs_;
};

/// A complex of finitely presented modules M_i = coker(P_i : R^{p_i} -> F_i)
/// with maps given on generators, D_i : F_i -> F_{i-1}.
template <CoefficientField F>
class PresentedComplex {
 public:
  /// With `verify` the maps are checked to be well defined and to compose
  /// to zero; constructions that guarantee both pass false.
  PresentedComplex(std::vector<FreeModule<F>> gens, std::vector<Matrix<F>> rels, std::vector<Matrix<F>> maps,
                   bool verify = true)
      : gens_(std::move(gens)), rels_(std::move(rels)), maps_(std::move(maps)) {
    require(!gens_.empty() && rels_.size() == gens_.size() && maps_.size() + 1 == gens_.size(),
            ErrorKind::kInvalidArgument, "presented complex: inconsistent numbers of terms");
    const auto& R = ring();
    for (std::size_t i = 0; i < gens_.size(); ++i)
      require(rels_[i].rows() == gens_[i].rank(), ErrorKind::kInvalidArgument,
              "relations of M_" + std::to_string(i) + " do not match its generators");
    for (std::size_t i = 1; i < gens_.size(); ++i) {
      const auto& D = maps_[i - 1];
      require(D.rows() == gens_[i - 1].rank() && D.cols() == gens_[i].rank(), ErrorKind::kInvalidArgument,
              "map D_" + std::to_string(i) + " has the wrong shape");
      if (!verify) continue;
      // well defined on M_i, and consecutive maps compose to zero in M_{i-2}
      SubmoduleBasis<F> target(gens_[i - 1], rels_[i - 1].columns());
      for (const auto& c : rels_[i].columns())
        require(target.contains(apply(R, D, c)), ErrorKind::kPrecondition,
                "D_" + std::to_string(i) + " does not respect the relations of M_" + std::to_string(i));
      if (i >= 2) {
        SubmoduleBasis<F> t2(gens_[i - 2], rels_[i - 2].columns());
        for (const auto& c : multiply(R, maps_[i - 2], D).columns())
          require(t2.contains(c), ErrorKind::kPrecondition,
                  "D_" + std::to_string(i - 1) + " o D_" + std::to_string(i) + " is not zero");
      }
    }
  }

  static PresentedComplex from_free(const ChainComplex<F>& C) {
    std::vector<Matrix<F>> rels, maps;
    for (const auto& m : C.modules()) rels.push_back(Matrix<F>(m.rank(), {}));
    for (const auto& d : C.differentials()) maps.push_back(d.matrix);
    return PresentedComplex(C.modules(), std::move(rels), std::move(maps), false);
  }

  std::size_t length() const { return gens_.size() - 1; }
  const QuotientRing<F>& ring() const { return *gens_[0].ring; }
  const FreeModule<F>& generators(std::size_t i) const { return gens_.at(i); }
  const Matrix<F>& relations(std::size_t i) const { return rels_.at(i); }
  const Matrix<F>& map(std::size_t i) const { return maps_.at(i - 1); }

  /// M_i as a quotient of its generator module.
  Subquotient<F> term(std::size_t i) const { return Subquotient<F>::quotient(gens_.at(i), rels_.at(i)); }

  /// H_i = ker(D_i) / im(D_{i+1}) inside F_i (with M_i's relations added).
  /// Indices outside 0..n give the zero module.
  Subquotient<F> homology(std::size_t i) const {
    if (i > length()) return Subquotient<F>::submodule(FreeModule<F>(gens_[0].ring, 0), Matrix<F>(0, {}));
    const auto& Fi = gens_[i];
    std::vector<Column<F>> z;
    if (i == 0) {
      z = Matrix<F>::identity(ring(), Fi.rank()).columns();
    } else {
      z = kernel_columns(gens_[i - 1], maps_[i - 1].columns(), Fi.degrees, rels_[i - 1].columns());
    }
    std::vector<Column<F>> b = rels_[i].columns();
    if (i < length())
      for (const auto& c : maps_[i].columns()) b.push_back(c);
    return Subquotient<F>(Fi, Matrix<F>(Fi.rank(), z), Matrix<F>(Fi.rank(), b));
  }

 private:
  std::vector<FreeModule<F>> gens_;
  std::vector<Matrix<F>> rels_;
  std::vector<Matrix<F>> maps_;
};

/// H_i(C) for a complex of free modules; zero outside 0..length.
template <CoefficientField F>
Subquotient<F> homology(const ChainComplex<F>& C, std::size_t i) {
  return PresentedComplex<F>::from_free(C).homology(i);
}

/// True when H_i(C) = 0 for all 1 <= i <= length.
template <CoefficientField F>
bool is_acyclic(const ChainComplex<F>& C) {
  auto P = PresentedComplex<F>::from_free(C);
  for (std::size_t i = 1; i <= C.length(); ++i)
    if (!P.homology(i).is_zero()) return false;
  return true;
}

/// Koszul complex K(f_1..f_n; R): G_i has one basis vector per i-subset
/// S = {s_1 < ... < s_i} of degree sum deg f_s, and
/// ∂(e_S) = sum_k (-1)^(k-1) f_{s_k} e_{S - s_k}.
template <CoefficientField F>
ChainComplex<F> koszul_complex(const RingPtr<F>& R, const std::vector<Polynomial<F>>& seq) {
  require(!seq.empty(), ErrorKind::kInvalidArgument, "Koszul complex of an empty sequence");
  require(seq.size() <= 20, ErrorKind::kLimit, "Koszul complex on more than 20 elements");
  const std::size_t n = seq.size();
  std::vector<Polynomial<F>> f;
  std::vector<std::int32_t> deg;
  for (const auto& p : seq) {
    R->check(p);
    f.push_back(R->normal_form(p));
    deg.push_back(p.is_zero() ? 0 : p.degree());
  }
  // subsets of each size as bitmasks, in lexicographic order of their elements
  std::vector<std::vector<std::uint32_t>> subsets(n + 1);
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    for (std::size_t k = 0; k < n; ++k) {
      bool x = a >> k & 1, y = b >> k & 1;
      if (x != y) return x > y;
    }
    return false;
  });
  for (auto m : masks) subsets[static_cast<std::size_t>(__builtin_popcount(m))].push_back(m);
  std::vector<std::map<std::uint32_t, std::size_t>> index(n + 1);
  std::vector<FreeModule<F>> mods;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::int32_t> d;
    for (std::size_t a = 0; a < subsets[i].size(); ++a) {
      index[i][subsets[i][a]] = a;
      std::int32_t s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (subsets[i][a] >> k & 1) s += deg[k];
      d.push_back(s);
    }
    mods.emplace_back(R, d);
  }
  std::vector<ModuleMap<F>> maps;
  for (std::size_t i = 1; i <= n; ++i) {
    auto M = Matrix<F>::zero(*R, subsets[i - 1].size(), subsets[i].size());
    for (std::size_t a = 0; a < subsets[i].size(); ++a) {
      auto S = subsets[i][a];
      int sign = 1;
      for (std::size_t k = 0; k < n; ++k) {
        if (!(S >> k & 1)) continue;
        auto row = index[i - 1].at(S & ~(1u << k));
        M(row, a) = sign > 0 ? f[k] : -f[k];
        sign = -sign;
      }
    }
    maps.emplace_back(mods[i], mods[i - 1], M);
  }
  return ChainComplex<F>(std::move(mods), std::move(maps));
}

namespace detail {

/// Matrix A (x) id_m: block (a, c) is A(a, c)·I_m.
template <CoefficientField F>
Matrix<F> kron_identity(const QuotientRing<F>& R, const Matrix<F>& A, std::size_t m) {
  auto out = Matrix<F>::zero(R, A.rows() * m, A.cols() * m);
  for (std::size_t c = 0; c < A.cols(); ++c)
    for (std::size_t a = 0; a < A.rows(); ++a) {
      if (A(a, c).is_zero()) continue;
      for (std::size_t s = 0; s < m; ++s) out(a * m + s, c * m + s) = A(a, c);
    }
  return out;
}

/// id_b (x) P: block diagonal copies of P.
template <CoefficientField F>
Matrix<F> block_diagonal(const QuotientRing<F>& R, const Matrix<F>& P, std::size_t b) {
  auto out = Matrix<F>::zero(R, P.rows() * b, P.cols() * b);
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t c = 0; c < P.cols(); ++c)
      for (std::size_t r = 0; r < P.rows(); ++r) out(k * P.rows() + r, k * P.cols() + c) = P(r, c);
  return out;
}

}  // namespace detail

/// C (x) M as a complex of presented modules, from a presentation of M:
/// C_i (x) M = coker(id (x) psi) on generators G_i (x) F.
template <CoefficientField F>
PresentedComplex<F> tensor_presented(const ChainComplex<F>& C, const ModuleMap<F>& psi) {
  require(C.ring().same_as(*psi.target.ring), ErrorKind::kRingMismatch, "complex and module over different rings");
  const auto& R = C.ring();
  const auto m = psi.target.rank();
  std::vector<FreeModule<F>> gens;
  std::vector<Matrix<F>> rels, maps;
  for (const auto& G : C.modules()) {
    std::vector<std::int32_t> d;
    for (auto a : G.degrees)
      for (auto b : psi.target.degrees) d.push_back(a + b);
    gens.emplace_back(C.ring_ptr(), d);
    rels.push_back(detail::block_diagonal(R, psi.matrix, G.rank()));
  }
  for (const auto& dm : C.differentials()) maps.push_back(detail::kron_identity(R, dm.matrix, m));
  return PresentedComplex<F>(std::move(gens), std::move(rels), std::move(maps), false);
}

/// Presentation of M; for quotient modules the relations are used directly.
template <CoefficientField F>
ModuleMap<F> presentation_of(const Subquotient<F>& M) {
  const auto& g = M.generators();
  if (g == Matrix<F>::identity(M.ring(), M.ambient().rank())) {
    auto rels = M.relations();
    return ModuleMap<F>(FreeModule<F>(M.ring_ptr(), induced_source_degrees(rels, M.ambient().degrees)), M.ambient(),
                        rels);
  }
  return presentation(M);
}

/// H_0..H_n of C (x) M.
template <CoefficientField F>
std::vector<Subquotient<F>> tensor_with_module(const ChainComplex<F>& C, const Subquotient<F>& M) {
  auto P = tensor_presented(C, presentation_of(M));
  std::vector<Subquotient<F>> out;
  for (std::size_t i = 0; i <= C.length(); ++i) out.push_back(P.homology(i));
  return out;
}

/// H_i(f_1..f_n; M).
template <CoefficientField F>
Subquotient<F> koszul_homology(const std::vector<Polynomial<F>>& seq, const Subquotient<F>& M, std::size_t i) {
  auto K = koszul_complex(M.ring_ptr(), seq);
  return tensor_presented(K, presentation_of(M)).homology(i);
}

/// Total complex of C1 (x) C2 with ∂(a (x) b) = ∂a (x) b + (-1)^{|a|} a (x) ∂b.
/// Basis of T_k: blocks (p, k-p) for p ascending, each ordered (row of C1, row of C2).
template <CoefficientField F>
ChainComplex<F> tensor_complexes(const ChainComplex<F>& C1, const ChainComplex<F>& C2) {
  require(C1.ring().same_as(C2.ring()), ErrorKind::kRingMismatch, "tensor of complexes over different rings");
  const auto& R = C1.ring();
  const std::size_t n1 = C1.length(), n2 = C2.length(), n = n1 + n2;
  // offset[k][p] = position of block (p, k - p) in T_k
  std::vector<std::vector<std::size_t>> offset(n + 1, std::vector<std::size_t>(n1 + 1, 0));
  std::vector<FreeModule<F>> mods;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::int32_t> d;
    for (std::size_t p = 0; p <= n1; ++p) {
      offset[k][p] = d.size();
      if (k < p || k - p > n2) continue;
      for (auto a : C1.module(p).degrees)
        for (auto b : C2.module(k - p).degrees) d.push_back(a + b);
    }
    mods.emplace_back(C1.ring_ptr(), d);
  }
  std::vector<ModuleMap<F>> maps;
  for (std::size_t k = 1; k <= n; ++k) {
    auto M = Matrix<F>::zero(R, mods[k - 1].rank(), mods[k].rank());
    for (std::size_t p = 0; p <= n1; ++p) {
      if (k < p || k - p > n2) continue;
      const std::size_t q = k - p;
      const auto r1 = C1.module(p).rank(), r2 = C2.module(q).rank();
      for (std::size_t a = 0; a < r1; ++a)
        for (std::size_t b = 0; b < r2; ++b) {
          std::size_t col = offset[k][p] + a * r2 + b;
          if (p >= 1) {
            const auto& d1 = C1.differential(p).matrix;
            for (std::size_t a2 = 0; a2 < d1.rows(); ++a2)
              if (!d1(a2, a).is_zero()) M(offset[k - 1][p - 1] + a2 * r2 + b, col) += d1(a2, a);
          }
          if (q >= 1) {
            const auto& d2 = C2.differential(q).matrix;
            const auto r2q = C2.module(q - 1).rank();
            for (std::size_t b2 = 0; b2 < d2.rows(); ++b2) {
              if (d2(b2, b).is_zero()) continue;
              auto e = p % 2 ? -d2(b2, b) : d2(b2, b);
              M(offset[k - 1][p] + a * r2q + b2, col) += e;
            }
          }
        }
    }
    maps.emplace_back(mods[k], mods[k - 1], M);
  }
  return ChainComplex<F>(std::move(mods), std::move(maps));
}

}  // namespace arw
