#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "arw/artin_rees/artin_rees.hpp"
#include "arw/complexes/determinantal.hpp"
#include "arw/complexes/power_complex.hpp"
#include "arw/resolution/tor.hpp"

namespace arw {

// ---------------------------------------------------------------------------
// Bound functions E and E_1

struct BoundEntry {
  int delta = 0, nu = 0, tau = 0;
  std::uint64_t e = 0, e1 = 0;
  bool e_recursion_ok = false;
  bool e1_recursion_ok = false;
  bool e1_le_e = false;
};

/// Memoized E(δ,ν,τ) and E_1(δ,ν,τ) for δ ≥ ν > τ ≥ 0:
///   E(δ,ν,0) = E_1(δ,ν,0) = δ-ν+1,
///   E(δ,ν,τ) = δ + (δ+2) E(δ,ν-1,τ-1),
///   E_1(δ,ν,τ) = δ + (δ+2) E_1(δ-1,ν-1,τ-1).
/// Overflow of 64 bits raises kLimit.
class BoundFunctionTable {
 public:
  std::uint64_t e(int delta, int nu, int tau) { return eval(memo_e_, false, delta, nu, tau); }
  std::uint64_t e1(int delta, int nu, int tau) { return eval(memo_e1_, true, delta, nu, tau); }

  static void check_args(int delta, int nu, int tau) {
    require(delta >= nu && nu > tau && tau >= 0, ErrorKind::kInvalidArgument,
            "bound arguments need delta >= nu > tau >= 0, got (" + std::to_string(delta) + ", " +
                std::to_string(nu) + ", " + std::to_string(tau) + ")");
  }

  /// Every admissible triple with δ ≤ max_delta, each checked against both
  /// recursions with an independent unfolding.
  std::vector<BoundEntry> table(int max_delta) {
    require(max_delta >= 1, ErrorKind::kInvalidArgument, "table needs max_delta >= 1");
    std::vector<BoundEntry> out;
    for (int d = 1; d <= max_delta; ++d)
      for (int n = 1; n <= d; ++n)
        for (int t = 0; t < n; ++t) {
          BoundEntry b{d, n, t, e(d, n, t), e1(d, n, t)};
          b.e_recursion_ok = b.e == unfold(false, d, n, t);
          b.e1_recursion_ok = b.e1 == unfold(true, d, n, t);
          b.e1_le_e = b.e1 <= b.e;
          out.push_back(b);
        }
    return out;
  }

 private:
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::uint64_t> memo_e_, memo_e1_;

  static std::uint64_t step(int delta, std::uint64_t inner) {
    std::uint64_t prod = 0, sum = 0;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(delta + 2), inner, &prod) ||
        __builtin_add_overflow(static_cast<std::uint64_t>(delta), prod, &sum))
      fail(ErrorKind::kLimit, "bound function value exceeds 64 bits");
    return sum;
  }

  std::uint64_t eval(std::map<Key, std::uint64_t>& memo, bool shrink, int delta, int nu, int tau) {
    check_args(delta, nu, tau);
    Key k{delta, nu, tau};
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::uint64_t v = tau == 0 ? static_cast<std::uint64_t>(delta - nu + 1)
                               : step(delta, eval(memo, shrink, shrink ? delta - 1 : delta, nu - 1, tau - 1));
    memo.emplace(k, v);
    return v;
  }

  // iterative unfolding, no memo
  static std::uint64_t unfold(bool shrink, int delta, int nu, int tau) {
    std::vector<int> deltas;
    while (tau > 0) {
      deltas.push_back(delta);
      if (shrink) --delta;
      --nu;
      --tau;
    }
    std::uint64_t v = static_cast<std::uint64_t>(delta - nu + 1);
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) v = step(*it, v);
    return v;
  }
};

inline std::uint64_t e_bound(int delta, int nu, int tau) { return BoundFunctionTable().e(delta, nu, tau); }
inline std::uint64_t e1_bound(int delta, int nu, int tau) { return BoundFunctionTable().e1(delta, nu, tau); }

// ---------------------------------------------------------------------------
// Cohomology annihilators through Ext against the ambient polynomial ring

namespace detail {

template <CoefficientField F>
RingPtr<F> ambient_ring(const QuotientRing<F>& R) {
  return make_quotient_ring(R.ambient_ptr(), std::vector<Polynomial<F>>{});
}

/// M regarded as a module over the ambient S: same generators, relations
/// enlarged by J times each basis vector.
template <CoefficientField F>
Subquotient<F> restrict_to_ambient(const Subquotient<F>& M, const RingPtr<F>& S) {
  const auto& A = M.ambient();
  FreeModule<F> AS(S, A.degrees);
  auto rels = M.relations().columns();
  for (const auto& g : M.ring().defining())
    for (std::size_t k = 0; k < A.rank(); ++k) {
      Column<F> v(A.rank(), S->zero());
      v[k] = g;
      rels.push_back(std::move(v));
    }
  return Subquotient<F>(AS, Matrix<F>(A.rank(), M.generators().columns()), Matrix<F>(A.rank(), rels));
}

template <CoefficientField F>
FreeModule<F> dual(const FreeModule<F>& G) {
  std::vector<std::int32_t> d;
  for (auto x : G.degrees) d.push_back(-x);
  return FreeModule<F>(G.ring, d);
}

/// Columns of the transpose of `m` (rows of m).
template <CoefficientField F>
std::vector<Column<F>> transpose_columns(const Matrix<F>& m) {
  std::vector<Column<F>> out(m.rows(), Column<F>(m.cols()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[i][j] = m(i, j);
  return out;
}

}  // namespace detail

/// Ext^j_S(M, S) over the ambient polynomial ring S of M's ring, as
/// ker(∂_{j+1}^T) / im(∂_j^T) inside F_j^*.
template <CoefficientField F>
Subquotient<F> ext_over_ambient(const Subquotient<F>& M, std::size_t j) {
  auto S = detail::ambient_ring(M.ring());
  auto MS = detail::restrict_to_ambient(M, S);
  const std::size_t D = S->nvars();
  auto res = free_resolution(MS, std::max<std::size_t>(j + 1, D + 1));
  require(res.complete, ErrorKind::kLimit, "resolution over the ambient ring did not terminate by step D+1");
  const auto Fj = detail::dual(res.free_module(j));
  std::vector<Column<F>> ker;
  if (res.free_module(j + 1).rank() == 0) {
    for (std::size_t k = 0; k < Fj.rank(); ++k) ker.push_back(Fj.basis_vector(k));
  } else {
    const auto target = detail::dual(res.free_module(j + 1));
    ker = kernel_columns(target, detail::transpose_columns(res.differential(j + 1).matrix), Fj.degrees);
  }
  std::vector<Column<F>> rels;
  if (j >= 1) rels = detail::transpose_columns(res.differential(j).matrix);
  return Subquotient<F>(Fj, Matrix<F>(Fj.rank(), ker), Matrix<F>(Fj.rank(), rels));
}

/// Ann_S Ext^{D-i}_S(M, S), carried into R. By graded local duality this is
/// Ann H^i_m(M).
template <CoefficientField F>
Ideal<F> local_cohomology_annihilator(const Subquotient<F>& M, std::size_t i) {
  const auto D = M.ring().nvars();
  require(i <= D, ErrorKind::kInvalidArgument, "cohomological index exceeds the ambient dimension");
  auto ann = annihilator(ext_over_ambient(M, D - i));
  return Ideal<F>(M.ring_ptr(), ann.generators()).minimalized();
}

template <CoefficientField F>
struct CohomologyAnnihilators {
  int dim = 0;                  // d = dim R
  std::size_t ambient_dim = 0;  // D
  std::vector<Ideal<F>> a;      // a_i = Ann H^i_m(R), 0 <= i < d
  std::vector<Ideal<F>> b;      // b_i = a_0 ... a_i
  std::vector<int> b_dims;      // dim R/b_i
  bool chain_descending = true;
  bool dims_ok = true;

  bool certified() const { return chain_descending && dims_ok; }
};

template <CoefficientField F>
CohomologyAnnihilators<F> cohomology_annihilators(const RingPtr<F>& Rp) {
  const auto& R = *Rp;
  CohomologyAnnihilators<F> ca;
  ca.dim = R.dimension();
  ca.ambient_dim = R.nvars();
  auto Rmod = Subquotient<F>::cyclic(Ideal<F>::zero(Rp));
  for (int i = 0; i < ca.dim; ++i) {
    ca.a.push_back(local_cohomology_annihilator(Rmod, static_cast<std::size_t>(i)));
    ca.b.push_back(i == 0 ? ca.a[0] : ideal_product(ca.b.back(), ca.a.back()).minimalized());
    ca.b_dims.push_back(ca.b.back().dimension());
    ca.dims_ok = ca.dims_ok && ca.b_dims.back() <= i;
    if (i > 0) ca.chain_descending = ca.chain_descending && ca.b[i - 1].contains(ca.b[i]);
  }
  return ca;
}

/// For a j-th syzygy M: b_i ⊆ Ann H^i_m(M) for 0 <= i < min(j, d). Entry i
/// records the containment.
template <CoefficientField F>
std::vector<bool> syzygy_annihilation_instances(const CohomologyAnnihilators<F>& ca, const Subquotient<F>& M,
                                                std::size_t j) {
  std::vector<bool> out;
  for (std::size_t i = 0; i < std::min<std::size_t>(j, ca.b.size()); ++i)
    out.push_back(local_cohomology_annihilator(M, i).contains(ca.b[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Systems of parameters and well-suited sequences

/// dim R/(seq), -1 for the unit ideal.
template <CoefficientField F>
int quotient_dimension(const RingPtr<F>& Rp, const std::vector<Polynomial<F>>& seq) {
  return Ideal<F>(Rp, seq).dimension();
}

template <CoefficientField F>
bool is_system_of_parameters(const std::vector<Polynomial<F>>& seq, const RingPtr<F>& Rp) {
  if (static_cast<int>(seq.size()) != Rp->dimension()) return false;
  return quotient_dimension(Rp, seq) == 0;
}

struct WellSuitedReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// x itself is a sop, and for 1 <= i <= j <= d every subset of x of size
/// d-(j-i+1) together with c_i..c_j is a sop.
template <CoefficientField F>
WellSuitedReport well_suited_check(const std::vector<Polynomial<F>>& x, const std::vector<Polynomial<F>>& c,
                                   const RingPtr<F>& Rp) {
  const auto d = static_cast<std::size_t>(std::max(0, Rp->dimension()));
  require(x.size() == d && c.size() == d, ErrorKind::kInvalidArgument,
          "well-suitedness needs sequences of length dim R = " + std::to_string(d));
  WellSuitedReport r;
  auto test = [&](const std::vector<Polynomial<F>>& seq, const std::string& label) {
    ++r.checked;
    if (!is_system_of_parameters(seq, Rp)) {
      r.ok = false;
      r.failures.push_back(label);
    }
  };
  test(x, "x");
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = i; j <= d; ++j) {
      const auto size = d - (j - i + 1);
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == size) {
          std::vector<Polynomial<F>> seq;
          std::string label = "x{";
          for (auto p : pick) {
            seq.push_back(x[p]);
            label += std::to_string(p + 1) + (p == pick.back() ? "" : ",");
          }
          for (auto k = i; k <= j; ++k) seq.push_back(c[k - 1]);
          test(seq, label + "} + c" + std::to_string(i) + ".." + std::to_string(j));
          return;
        }
        for (auto p = start; p < d; ++p) {
          pick.push_back(p);
          rec(p + 1);
          pick.pop_back();
        }
      };
      rec(0);
    }
  return r;
}

// ---------------------------------------------------------------------------
// KAS candidates

namespace detail {

/// Random homogeneous element of I of degree e; zero when no generator has
/// degree <= e.
template <CoefficientField F>
Polynomial<F> random_element(const Ideal<F>& I, std::int32_t e, std::mt19937_64& rng) {
  const auto& R = I.ring();
  auto out = R.zero();
  for (const auto& g : I.generators()) {
    if (g.is_zero() || g.degree() > e) continue;
    out += R.mul(R.random_form(e - g.degree(), rng), g);
  }
  return R.normal_form(out);
}

template <CoefficientField F>
int double_annihilator_dimension(const RingPtr<F>& Rp, const Polynomial<F>& c) {
  auto zero = Ideal<F>::zero(Rp);
  auto ann = ideal_quotient(zero, c);
  return ideal_quotient(zero, ann).dimension();
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

template <CoefficientField F>
struct KASCandidate {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> base;  // c'_1..c'_d
  int exponent = 1;                 // in use: c_i = (c'_i)^exponent
  std::uint64_t prescribed_exponent = 1;  // E_1(d,d,d-1)
  std::optional<int> empirical_exponent;
  CohomologyAnnihilators<F> annihilators;
  // certificates, index i-1 for c'_i
  std::vector<bool> membership;       // c'_i ∈ b_{i-1}
  std::vector<int> tail_dims;         // dim R/(c'_i..c'_d), expected i-1
  std::vector<int> double_ann_dims;   // dim R/(0:(0:c'_i)) for 1 <= i <= d-1
  std::size_t draws = 0;

  std::size_t dim() const { return base.size(); }
  Polynomial<F> element(std::size_t i) const { return base.at(i - 1).pow(static_cast<unsigned>(exponent)); }
  std::vector<Polynomial<F>> elements() const {
    std::vector<Polynomial<F>> out;
    for (std::size_t i = 1; i <= dim(); ++i) out.push_back(ring->normal_form(element(i)));
    return out;
  }
  KASCandidate with_exponent(int e) const {
    require(e >= 1, ErrorKind::kInvalidArgument, "exponent must be positive");
    auto c = *this;
    c.exponent = e;
    return c;
  }

  std::string canonical_text() const {
    std::string s = ring->describe() + "|e=" + std::to_string(exponent);
    for (const auto& b : base) s += "|" + to_string(b);
    return s;
  }
  std::string content_hash() const {
    std::ostringstream os;
    os << std::hex << detail::fnv1a(canonical_text());
    auto h = os.str();
    return std::string(16 - h.size(), '0') + h;
  }
};

/// Draws c'_d, c'_{d-1}, ..., c'_1 with c'_i a random homogeneous element of
/// b_{i-1}, accepting when dim R/(c'_i..c'_d) = i-1 and, for i <= d-1,
/// dim R/(0:(0:c'_i)) <= i-1. Random draws plus these certificates stand in
/// for prime avoidance. The exponent in use starts at 1.
template <CoefficientField F>
KASCandidate<F> kas_candidate(const RingPtr<F>& Rp, std::uint64_t seed, int degree_bound,
                              std::size_t attempts_per_degree = 12) {
  require(degree_bound >= 0, ErrorKind::kInvalidArgument, "degree bound must be nonnegative");
  const auto& R = *Rp;
  KASCandidate<F> c;
  c.ring = Rp;
  c.annihilators = cohomology_annihilators(Rp);
  const int d = c.annihilators.dim;
  require(d >= 0, ErrorKind::kPrecondition, "the zero ring has no KAS sequence");
  require(c.annihilators.certified(), ErrorKind::kPrecondition,
          "cohomology annihilators failed their certificates (b-chain or dim R/b_i <= i)");
  if (d >= 1) c.prescribed_exponent = e1_bound(d, d, d - 1);
  c.base.assign(d, R.zero());
  c.membership.assign(d, false);
  c.tail_dims.assign(d, 0);
  c.double_ann_dims.assign(d, -1);
  std::mt19937_64 rng(seed);
  for (int i = d; i >= 1; --i) {
    const auto& b = c.annihilators.b[i - 1];
    std::int32_t lo = std::numeric_limits<std::int32_t>::max();
    for (const auto& g : b.generators())
      if (!g.is_zero()) lo = std::min(lo, g.degree());
    lo = std::max<std::int32_t>(lo, 1);
    if (lo > degree_bound)
      fail(ErrorKind::kSearchExhausted, "c'_" + std::to_string(i) + ": b_" + std::to_string(i - 1) + " = " +
                                            b.describe() + " has no elements of positive degree <= " +
                                            std::to_string(degree_bound) + " (b-ideal too small for the bound)");
    std::vector<Polynomial<F>> tail(c.base.begin() + i, c.base.end());
    std::string last;
    bool found = false;
    for (std::int32_t e = lo; e <= degree_bound && !found; ++e)
      for (std::size_t a = 0; a < attempts_per_degree && !found; ++a) {
        ++c.draws;
        auto x = detail::random_element(b, e, rng);
        if (x.is_zero()) {
          last = "draw in degree " + std::to_string(e) + " was zero";
          continue;
        }
        auto seq = tail;
        seq.insert(seq.begin(), x);
        const int td = quotient_dimension(Rp, seq);
        if (td != i - 1) {
          last = "dim R/(c'_" + std::to_string(i) + "..c'_d) = " + std::to_string(td) + ", need " +
                 std::to_string(i - 1) + " for c'_" + std::to_string(i) + " = " + to_string(x);
          continue;
        }
        int dd = -1;
        if (i <= d - 1) {
          dd = detail::double_annihilator_dimension(Rp, x);
          if (dd > i - 1) {
            last = "dim R/(0:(0:c'_" + std::to_string(i) + ")) = " + std::to_string(dd) + " > " +
                   std::to_string(i - 1) + " for " + to_string(x);
            continue;
          }
        }
        c.base[i - 1] = x;
        c.membership[i - 1] = b.contains(x);
        c.tail_dims[i - 1] = td;
        c.double_ann_dims[i - 1] = dd;
        found = true;
      }
    if (!found)
      fail(ErrorKind::kSearchExhausted, "c'_" + std::to_string(i) + ": no draw passed within degree <= " +
                                            std::to_string(degree_bound) + " (last certificate: " + last + ")");
  }
  return c;
}

struct CandidateRecheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Recomputes every certificate of c from scratch, including the
/// annihilator ideals.
template <CoefficientField F>
CandidateRecheck recheck_candidate(const KASCandidate<F>& c) {
  CandidateRecheck r;
  // fresh ring object so no cached basis is shared with c
  auto Rp = make_quotient_ring(c.ring->ambient_ptr(), c.ring->defining());
  auto ca = cohomology_annihilators(Rp);
  const int d = ca.dim;
  auto bad = [&](const std::string& s) {
    r.ok = false;
    r.failures.push_back(s);
  };
  if (d != static_cast<int>(c.dim())) {
    bad("dimension changed: " + std::to_string(d));
    return r;
  }
  if (!ca.certified()) bad("b-chain certificates");
  for (int i = 1; i <= d; ++i) {
    const auto& x = c.base[i - 1];
    if (!ca.b[i - 1].contains(x)) bad("c'_" + std::to_string(i) + " not in b_" + std::to_string(i - 1));
    std::vector<Polynomial<F>> tail(c.base.begin() + (i - 1), c.base.end());
    if (quotient_dimension(Rp, tail) != i - 1) bad("tail dimension at " + std::to_string(i));
    if (i <= d - 1 && detail::double_annihilator_dimension(Rp, x) > i - 1)
      bad("double annihilator dimension at " + std::to_string(i));
  }
  if (!is_system_of_parameters(c.elements(), c.ring)) bad("c is not a system of parameters");
  return r;
}

// ---------------------------------------------------------------------------
// Verification of the annihilation property on sampled families

struct KASCheck {
  std::size_t module = 0, sop = 0;
  int k = 0, j = 0, v = 0, n = 0, t = 0;
  bool pass = true;
};

struct KASSkip {
  std::size_t module = 0, sop = 0;
  int k = 0;
  std::string reason;
};

struct KASVerifyReport {
  std::string candidate_hash;
  int exponent = 1;
  std::vector<KASCheck> checks;
  std::vector<KASSkip> skipped;
  std::size_t failures = 0;
  int n_max = 0;
  std::vector<int> t_list;

  bool passed() const { return failures == 0; }
  std::string scope() const {
    return "sampled: " + std::to_string(checks.size()) + " checks over k <= j <= v <= d, 1 <= n <= min(j, " +
           std::to_string(n_max) + "), listed t; v < j is outside the quantifier range and not tested";
  }
};

/// Random linear sequences x with x_1..x_k, c_{k+1}..c_d a sop for every k.
template <CoefficientField F>
std::vector<std::vector<Polynomial<F>>> random_sop_family(const KASCandidate<F>& c, std::size_t count,
                                                          std::uint64_t seed, std::size_t attempts = 50) {
  std::mt19937_64 rng(seed);
  const auto d = c.dim();
  const auto cs = c.elements();
  std::vector<std::vector<Polynomial<F>>> out;
  for (std::size_t a = 0; a < attempts * count && out.size() < count; ++a) {
    std::vector<Polynomial<F>> x;
    for (std::size_t i = 0; i < d; ++i) x.push_back(c.ring->random_form(1, rng));
    bool ok = true;
    for (std::size_t k = 1; k <= d && ok; ++k) {
      std::vector<Polynomial<F>> seq(x.begin(), x.begin() + k);
      seq.insert(seq.end(), cs.begin() + k, cs.end());
      ok = is_system_of_parameters(seq, c.ring);
    }
    if (ok) out.push_back(std::move(x));
  }
  require(out.size() == count, ErrorKind::kSearchExhausted, "could not draw enough systems of parameters");
  return out;
}

/// c_v H_n(x_1..x_k, c_{k+1}^t..c_j^t; M) = 0 for v >= j >= k >= 1,
/// 1 <= n <= min(j, n_max) and t in t_list. A prefix that fails the sop
/// condition is skipped and logged.
template <CoefficientField F>
KASVerifyReport kas_verify(const KASCandidate<F>& c, const std::vector<ModuleCase<F>>& modules,
                           const std::vector<std::vector<Polynomial<F>>>& sops, const std::vector<int>& t_list,
                           int n_max) {
  require(n_max >= 1, ErrorKind::kInvalidArgument, "n_max must be at least 1");
  for (int t : t_list) require(t >= 1, ErrorKind::kInvalidArgument, "t must be positive");
  const int d = static_cast<int>(c.dim());
  const auto cs = c.elements();
  KASVerifyReport rep;
  rep.candidate_hash = c.content_hash();
  rep.exponent = c.exponent;
  rep.n_max = n_max;
  rep.t_list = t_list;
  for (std::size_t mi = 0; mi < modules.size(); ++mi) {
    const auto& M = modules[mi].module;
    for (std::size_t si = 0; si < sops.size(); ++si) {
      const auto& x = sops[si];
      require(static_cast<int>(x.size()) >= d, ErrorKind::kInvalidArgument, "sop shorter than dim R");
      for (int k = 1; k <= d; ++k) {
        std::vector<Polynomial<F>> pre(x.begin(), x.begin() + k);
        auto full = pre;
        full.insert(full.end(), cs.begin() + k, cs.end());
        if (!is_system_of_parameters(full, c.ring)) {
          rep.skipped.push_back({mi, si, k, "x_1..x_k, c_{k+1}..c_d is not a sop"});
          continue;
        }
        for (int j = k; j <= d; ++j)
          for (int t : t_list) {
            if (j == k && t != t_list.front()) continue;  // no c-powers: t is irrelevant
            auto seq = pre;
            for (int l = k + 1; l <= j; ++l) seq.push_back(c.ring->normal_form(cs[l - 1].pow(t)));
            auto K = koszul_complex(c.ring, seq);
            auto P = tensor_presented(K, presentation_of(M));
            for (int n = 1; n <= std::min(j, n_max); ++n) {
              auto H = P.homology(static_cast<std::size_t>(n));
              for (int v = j; v <= d; ++v) {
                KASCheck ch{mi, si, k, j, v, n, t, kills(cs[v - 1], H)};
                if (!ch.pass) ++rep.failures;
                rep.checks.push_back(ch);
              }
            }
          }
      }
    }
  }
  return rep;
}

/// Smallest exponent in 1, 2, 4, ... (capped at the prescribed one) that
/// passes kas_verify on the given grid; records it on c.
template <CoefficientField F>
std::optional<int> calibrate_exponent(KASCandidate<F>& c, const std::vector<ModuleCase<F>>& modules,
                                      const std::vector<std::vector<Polynomial<F>>>& sops,
                                      const std::vector<int>& t_list, int n_max) {
  const int cap = static_cast<int>(std::min<std::uint64_t>(c.prescribed_exponent, 1u << 10));
  for (int e = 1;; e = std::min(2 * e, cap)) {
    if (kas_verify(c.with_exponent(e), modules, sops, t_list, n_max).passed()) {
      c.empirical_exponent = e;
      c.exponent = e;
      return e;
    }
    if (e == cap) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Special reductions

struct ReductionCertificate {
  int i = 0;               // 0 <= i <= d-1
  std::string condition;   // "(1) mod (c_{d-i}..c_d)" or "(2) mod (0:(0:c_{d-i}))"
  std::optional<int> k;    // reduction number, nullopt when > k_max
  bool trivial = false;    // the modulus is the unit ideal
};

template <CoefficientField F>
struct SpecialReduction {
  std::vector<Polynomial<F>> x;
  WellSuitedReport well_suited;
  std::optional<int> reduction_of_I;  // reduction number of (x) in I
  std::vector<ReductionCertificate> certificates;
  std::size_t attempts = 0;

  bool accepted(int k_max) const {
    if (!well_suited.ok || !reduction_of_I || *reduction_of_I > k_max) return false;
    for (const auto& c : certificates)
      if (!c.k || *c.k > k_max) return false;
    return true;
  }
};

namespace detail {

/// Reduction number of (x_1..x_lo) in (x_1..x_hi) over R/K.
template <CoefficientField F>
ReductionCertificate reduction_modulo(const QuotientRing<F>& R, const std::vector<Polynomial<F>>& x, std::size_t lo,
                                      std::size_t hi, const std::vector<Polynomial<F>>& K, int k_max) {
  ReductionCertificate c;
  auto gens = R.defining();
  gens.insert(gens.end(), K.begin(), K.end());
  auto Rq = make_quotient_ring(R.ambient_ptr(), gens);
  if (Rq->dimension() < 0) {
    c.trivial = true;
    c.k = 0;
    return c;
  }
  Ideal<F> J(Rq, std::vector<Polynomial<F>>(x.begin(), x.begin() + lo));
  Ideal<F> I(Rq, std::vector<Polynomial<F>>(x.begin(), x.begin() + hi));
  c.k = reduction_number(J, I, k_max).k;
  return c;
}

}  // namespace detail

/// Evaluates Definition-style conditions for a given x: well-suited to c,
/// (x) a reduction of I, and for 0 <= i <= d-1 I_{d-i-1} a reduction of
/// I_{d-i} modulo (c_{d-i}..c_d) and modulo (0:(0:c_{d-i})).
template <CoefficientField F>
SpecialReduction<F> special_reduction_certify(const Ideal<F>& I, const KASCandidate<F>& c,
                                              const std::vector<Polynomial<F>>& x, int k_max) {
  const auto& Rp = I.ring_ptr();
  const auto& R = *Rp;
  const auto d = c.dim();
  const auto cs = c.elements();
  SpecialReduction<F> s;
  s.x = x;
  s.well_suited = well_suited_check(x, cs, Rp);
  s.reduction_of_I = reduction_number(Ideal<F>(Rp, x), I, k_max).k;
  for (std::size_t i = 0; i < d; ++i) {
    const auto top = d - i;
    std::vector<Polynomial<F>> tail(cs.begin() + (top - 1), cs.end());
    auto c1 = detail::reduction_modulo(R, x, top - 1, top, tail, k_max);
    c1.i = static_cast<int>(i);
    c1.condition = "(1) mod (c_" + std::to_string(top) + "..c_d)";
    s.certificates.push_back(c1);
    auto zero = Ideal<F>::zero(Rp);
    auto dbl = ideal_quotient(zero, ideal_quotient(zero, cs[top - 1]));
    auto c2 = detail::reduction_modulo(R, x, top - 1, top, dbl.generators(), k_max);
    c2.i = static_cast<int>(i);
    c2.condition = "(2) mod (0:(0:c_" + std::to_string(top) + "))";
    s.certificates.push_back(c2);
  }
  return s;
}

/// d random combinations of the generators of the m-primary ideal I in the
/// top generator degree, retried until accepted.
template <CoefficientField F>
SpecialReduction<F> special_reduction(const Ideal<F>& I, const KASCandidate<F>& c, std::uint64_t seed, int k_max,
                                      std::size_t attempts = 20) {
  require(I.ring().same_as(*c.ring), ErrorKind::kRingMismatch, "ideal and candidate over different rings");
  require(I.is_homogeneous(), ErrorKind::kNotHomogeneous, "special reductions need a homogeneous ideal");
  require(I.dimension() == 0, ErrorKind::kPrecondition, "I is not m-primary: dim R/I = " + std::to_string(I.dimension()));
  std::int32_t D = 0;
  for (const auto& g : I.generators())
    if (!g.is_zero()) D = std::max(D, g.degree());
  std::mt19937_64 rng(seed);
  SpecialReduction<F> last;
  for (std::size_t a = 1; a <= attempts; ++a) {
    std::vector<Polynomial<F>> x;
    for (std::size_t m = 0; m < c.dim(); ++m) x.push_back(detail::random_element(I, D, rng));
    last = special_reduction_certify(I, c, x, k_max);
    last.attempts = a;
    if (last.accepted(k_max)) return last;
  }
  std::string why = !last.well_suited.ok ? "not well-suited (" + last.well_suited.failures.front() + ")"
                    : !last.reduction_of_I ? "(x) is not a reduction of I within k_max"
                                           : "a reduction condition exceeds k_max";
  fail(ErrorKind::kSearchExhausted, "no special reduction in " + std::to_string(attempts) + " attempts; last: " + why);
}

// ---------------------------------------------------------------------------
// Annihilation of Tor, intersections and colon modules

struct FromAGTItem {
  int item = 0;  // 2, 3 or 4
  int k = 0;
  bool pass = true;
  std::string detail;
};

struct FromAGTReport {
  bool well_suited = true;
  std::vector<FromAGTItem> items;
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

/// With L = I_j^n + (c_{j+1}^{t_{j+1}}..c_i^{t_i}) and L' the same ideal
/// without the c_i term, checks for k = i..d:
///   (2) c_k^t Tor_1(R/L, M) = 0,
///   (3) c_k^t (L G ∩ N) ⊆ L N for a presentation M = G/N,
///   (4) c_k^t (L' M :_M c_i^∞) ⊆ L' M, only for j < i.
/// Item (4) needs c_i to be one of the Koszul elements of L. For j = i the
/// literal reading saturates I_i^n M by c_i, which for i = d is all of M
/// and fails for every n, so that case is not reported.
template <CoefficientField F>
FromAGTReport fromagt_checks(const KASCandidate<F>& c, const std::vector<Polynomial<F>>& x, const Subquotient<F>& M,
                             int j, int i, int n, const std::vector<int>& exps, int t) {
  const int d = static_cast<int>(c.dim());
  require(1 <= j && j <= i && i <= d, ErrorKind::kInvalidArgument, "need 1 <= j <= i <= d");
  require(n >= 1 && t >= 1, ErrorKind::kInvalidArgument, "n and t must be positive");
  require(static_cast<int>(exps.size()) == i - j, ErrorKind::kInvalidArgument,
          "need one exponent for each of c_{j+1}..c_i");
  require(M.is_submodule(), ErrorKind::kPrecondition, "M must be a submodule of a free module");
  const auto& Rp = c.ring;
  const auto& R = *Rp;
  const auto cs = c.elements();
  FromAGTReport rep;
  rep.well_suited = well_suited_check(x, cs, Rp).ok;
  auto Ij = ideal_power(Ideal<F>(Rp, std::vector<Polynomial<F>>(x.begin(), x.begin() + j)), n);
  std::vector<Polynomial<F>> tailL, tailL1;
  for (int l = j + 1; l <= i; ++l) {
    auto p = R.normal_form(cs[l - 1].pow(static_cast<unsigned>(exps[l - j - 1])));
    tailL.push_back(p);
    if (l < i) tailL1.push_back(p);
  }
  auto L = ideal_sum(Ij, tailL).minimalized();
  auto L1 = ideal_sum(Ij, tailL1).minimalized();

  auto T = tor(1, L, M);
  auto pres = presentation(M);
  auto N = image(pres);
  auto LG_N = module_intersection(ideal_times(L, pres.target), N);
  auto LN = ideal_times(L, N);
  const bool colon_item = j < i;
  auto L1M = ideal_times(L1, M);
  auto C = colon_item ? colon_capture(M, L1, cs[i - 1]) : Subquotient<F>();
  for (int k = i; k <= d; ++k) {
    auto ck = R.normal_form(cs[k - 1].pow(static_cast<unsigned>(t)));
    rep.items.push_back({2, k, kills(ck, T), "Tor_1(R/L, M)"});
    bool p3 = true;
    for (const auto& v : LG_N.generators().columns()) p3 = p3 && LN.contains(scale(R, v, ck));
    rep.items.push_back({3, k, p3, "L G ∩ N into L N"});
    if (!colon_item) continue;
    bool p4 = true;
    for (const auto& v : C.generators().columns()) p4 = p4 && L1M.contains(scale(R, v, ck));
    rep.items.push_back({4, k, p4, "(L'M : c_i^inf) into L'M"});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Annihilation of H_i(G ⊗ M) for complexes of bounded rank

struct ComplexAnnihilationReport {
  bool standard_conditions = true;
  std::vector<int> primary_dims;  // dim R/(I(∂_i) + (c_{i+1}..c_d)), index 0 unused
  bool hypotheses = true;
  std::vector<int> tried;
  std::optional<int> t;  // smallest passing t among tried
  int t_cap = 16;
  std::string note;
};

/// c_{n+j}^t H_i(G ⊗ M) = 0 for i >= 1 and 0 <= j <= d-n, with n the length
/// of G; t found by doubling up to t_cap. Hypotheses are checked and
/// reported; the search runs either way.
template <CoefficientField F>
ComplexAnnihilationReport kas_complex_annihilation(const KASCandidate<F>& c, const ChainComplex<F>& G,
                                                   const Subquotient<F>& M, int t_cap = 16) {
  const int d = static_cast<int>(c.dim());
  const int n = static_cast<int>(G.length());
  require(n >= 1 && n <= d, ErrorKind::kInvalidArgument, "complex length must lie in 1..dim R");
  require(t_cap >= 1, ErrorKind::kInvalidArgument, "t cap must be positive");
  const auto& R = *c.ring;
  const auto cs = c.elements();
  ComplexAnnihilationReport rep;
  rep.t_cap = t_cap;
  auto prof = rank_profile(G, false);
  rep.standard_conditions = prof.standard_conditions;
  rep.primary_dims.assign(n + 1, -1);
  for (int i = 1; i <= n; ++i) {
    std::vector<Polynomial<F>> tail(cs.begin() + i, cs.end());
    rep.primary_dims[i] = ideal_sum(prof.ideals[i], tail).dimension();
  }
  rep.hypotheses = rep.standard_conditions;
  for (int i = 1; i <= n; ++i) rep.hypotheses = rep.hypotheses && rep.primary_dims[i] <= 0;
  if (!rep.hypotheses) rep.note = "hypotheses fail; annihilation reported without the proposition's guarantee";
  auto H = tensor_with_module(G, M);
  for (int t = 1; t <= t_cap; t *= 2) {
    rep.tried.push_back(t);
    bool ok = true;
    for (int jj = 0; jj <= d - n && ok; ++jj) {
      auto ct = R.normal_form(cs[n + jj - 1].pow(static_cast<unsigned>(t)));
      for (int i = 1; i <= n && ok; ++i) ok = kills(ct, H[i]);
    }
    if (ok) {
      rep.t = t;
      return rep;
    }
  }
  rep.note += (rep.note.empty() ? "" : "; ") + std::string("t cap ") + std::to_string(t_cap) + " exceeded";
  return rep;
}

}  // namespace arw
