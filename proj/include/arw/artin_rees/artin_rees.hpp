#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "arw/resolution/free_resolution.hpp"

namespace arw {

/// Artin-Rees numbers of A ⊆ N with respect to I over the window n <= n_max:
///   weak:   I^n N ∩ A ⊆ I^{n-h} A                 for h <= n <= n_max
///   strong: I^n N ∩ A = I^{n-h} (I^h N ∩ A)       for h <= n <= n_max
/// h = n_max only tests the trivial containment at n = n_max, so a minimal
/// candidate equal to n_max is reported as unbounded in the window (nullopt).
struct ARResult {
  std::string id;
  int n_max = 0;
  std::optional<int> h_weak;
  std::optional<int> h_strong;
  /// weak_exponent[n] = largest e <= n with I^n N ∩ A ⊆ I^e A.
  std::vector<int> weak_exponent;
  /// strong_from[n] = smallest h <= n with I^n N ∩ A ⊆ I^{n-h}(I^h N ∩ A).
  std::vector<int> strong_from;

  std::string status() const { return h_weak ? "window-certified" : "unbounded-in-window"; }
};

inline std::string h_to_string(const std::optional<int>& h) { return h ? std::to_string(*h) : "unbounded"; }

namespace detail {

/// I^0..I^n, minimalized for homogeneous I.
template <CoefficientField F>
std::vector<Ideal<F>> ideal_powers(const Ideal<F>& I, int n) {
  std::vector<Ideal<F>> P{Ideal<F>::unit(I.ring_ptr())};
  const bool hom = I.is_homogeneous();
  for (int e = 1; e <= n; ++e) {
    auto next = ideal_product(P.back(), I);
    P.push_back(hom ? next.minimalized() : next);
  }
  return P;
}

template <CoefficientField F>
Subquotient<F> times(const Ideal<F>& J, const Subquotient<F>& N) {
  if (J.is_unit()) return N;
  return ideal_times(J, N, N.is_homogeneous());
}

/// Smallest h in [0, n_max] such that ok(n, h) for all n in [h, n_max],
/// given that ok(n, h) is monotone in h.
template <typename Ok>
int minimal_window_h(int n_max, Ok ok) {
  for (int h = 0; h <= n_max; ++h) {
    bool all = true;
    for (int n = h; n <= n_max && all; ++n) all = ok(n, h);
    if (all) return h;
  }
  return n_max;
}

}  // namespace detail

/// A and N are submodules of one free module with A ⊆ N.
template <CoefficientField F>
ARResult artin_rees_number(const Subquotient<F>& A, const Subquotient<F>& N, const Ideal<F>& I, int n_max,
                           std::string id = {}) {
  require(n_max >= 1, ErrorKind::kInvalidArgument, "n_max must be at least 1");
  require(A.is_submodule() && N.is_submodule(), ErrorKind::kPrecondition, "Artin-Rees needs submodules");
  require(A.ambient() == N.ambient(), ErrorKind::kRingMismatch, "A and N live in different free modules");
  require(submodule_contains(N, A), ErrorKind::kPrecondition, "A is not contained in N");
  ARResult r;
  r.id = std::move(id);
  r.n_max = n_max;
  auto P = detail::ideal_powers(I, n_max);
  std::vector<Subquotient<F>> capn, IeA;
  for (int n = 0; n <= n_max; ++n) {
    capn.push_back(module_intersection(detail::times(P[n], N), A));
    IeA.push_back(detail::times(P[n], A));
  }
  r.weak_exponent.assign(n_max + 1, 0);
  for (int n = 0; n <= n_max; ++n) {
    int e = n;
    while (e > 0 && !submodule_contains(IeA[e], capn[n])) --e;
    r.weak_exponent[n] = e;
  }
  int hw = detail::minimal_window_h(n_max, [&](int n, int h) { return n - h <= r.weak_exponent[n]; });
  r.strong_from.assign(n_max + 1, 0);
  for (int n = 0; n <= n_max; ++n) {
    int h = 0;
    while (h < n && !submodule_contains(detail::times(P[n - h], capn[h]), capn[n])) ++h;
    r.strong_from[n] = h;
  }
  // containment for (n, h) holds for every h >= strong_from[n]: the right
  // side I^{n-h}(I^h N ∩ A) grows with h
  int hs = detail::minimal_window_h(n_max, [&](int n, int h) { return h >= r.strong_from[n]; });
  if (hw < n_max) r.h_weak = hw;
  if (hs < n_max) r.h_strong = hs;
  return r;
}

/// N = the whole free module A.ambient().
template <CoefficientField F>
ARResult artin_rees_number(const Subquotient<F>& A, const Ideal<F>& I, int n_max, std::string id = {}) {
  return artin_rees_number(A, Subquotient<F>::free(A.ambient()), I, n_max, std::move(id));
}

/// Weak Artin-Rees numbers of im ∂_{i+1} ⊆ F_i for i in [i_lo, i_hi] along
/// the minimal resolution of M.
template <CoefficientField F>
std::vector<ARResult> syzygetic_ar(const Resolution<F>& res, const Ideal<F>& I, std::size_t i_lo, std::size_t i_hi,
                                   int n_max) {
  require(i_lo <= i_hi, ErrorKind::kInvalidArgument, "empty index range");
  require(i_hi + 1 <= res.length_computed, ErrorKind::kInvalidArgument, "resolution too short for the index range");
  std::vector<ARResult> out;
  for (std::size_t i = i_lo; i <= i_hi; ++i) {
    auto A = image(res.differential(i + 1));
    out.push_back(artin_rees_number(A, Subquotient<F>::free(res.free_module(i)), I, n_max, "i=" + std::to_string(i)));
  }
  return out;
}

template <CoefficientField F>
std::vector<ARResult> syzygetic_ar(const Subquotient<F>& M, const Ideal<F>& I, std::size_t i_lo, std::size_t i_hi,
                                   int n_max) {
  return syzygetic_ar(free_resolution(M, i_hi + 1), I, i_lo, i_hi, n_max);
}

struct ReductionResult {
  /// Smallest k <= k_max with I^{k+1} = J I^k; nullopt when none in the window.
  std::optional<int> k;
  int k_max = 0;
  /// I^n ⊆ J^{n-k} checked for k <= n <= consequence_window.
  int consequence_window = 0;
  bool consequence_holds = false;
};

/// Smallest k <= k_max with I^{k+1} = J·I^k (J ⊆ I), plus the consequence
/// I^n ⊆ J^{n-k} for k <= n <= window.
template <CoefficientField F>
ReductionResult reduction_number(const Ideal<F>& J, const Ideal<F>& I, int k_max, int window = 6) {
  require(k_max >= 0, ErrorKind::kInvalidArgument, "k_max must be nonnegative");
  require(I.ring().same_as(J.ring()), ErrorKind::kRingMismatch, "ideals over different rings");
  require(I.contains(J), ErrorKind::kPrecondition, "J is not contained in I");
  ReductionResult r;
  r.k_max = k_max;
  auto P = detail::ideal_powers(I, k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    if (ideal_product(J, P[k]).contains(P[k + 1])) {
      r.k = k;
      break;
    }
  if (!r.k) return r;
  r.consequence_window = std::max(window, *r.k);
  auto JP = detail::ideal_powers(J, r.consequence_window - *r.k);
  auto IP = detail::ideal_powers(I, r.consequence_window);
  r.consequence_holds = true;
  for (int n = *r.k; n <= r.consequence_window && r.consequence_holds; ++n)
    r.consequence_holds = JP[n - *r.k].contains(IP[n]);
  return r;
}

struct MainReductionResult {
  bool holds = false;
  /// Index of the first generator of I_{d-i}^n G ∩ N outside the right side.
  std::optional<std::size_t> witness;
  std::string witness_text;
};

/// I_{d-i}^n G ∩ N ⊆ I_{d-i}^{n-h} N + (I_{d-i-1}^{n-h} G ∩ N), where
/// I_j = (x_1..x_j), I_0 = 0 and d = |x|.
template <CoefficientField F>
MainReductionResult main_reduction_check(const Subquotient<F>& N, const std::vector<Polynomial<F>>& x, std::size_t i,
                                         int n, int h) {
  const auto d = x.size();
  require(N.is_submodule(), ErrorKind::kPrecondition, "N must be a submodule of G");
  require(i < d, ErrorKind::kInvalidArgument, "index i must satisfy 0 <= i <= d-1");
  require(h >= 0 && n >= h, ErrorKind::kInvalidArgument, "need 0 <= h <= n");
  const auto& Rp = N.ring_ptr();
  auto chain = [&](std::size_t j) { return Ideal<F>(Rp, std::vector<Polynomial<F>>(x.begin(), x.begin() + j)); };
  auto G = Subquotient<F>::free(N.ambient());
  auto Ia = chain(d - i), Ib = chain(d - i - 1);
  auto lhs = module_intersection(detail::times(ideal_power(Ia, n), G), N);
  auto right1 = detail::times(ideal_power(Ia, n - h), N);
  auto IbPow = ideal_power(Ib, n - h);
  auto rhs = IbPow.is_zero() ? right1 : submodule_sum(right1, module_intersection(detail::times(IbPow, G), N));
  MainReductionResult r;
  r.holds = true;
  const auto& cols = lhs.generators().columns();
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (!rhs.contains(cols[k])) {
      r.holds = false;
      r.witness = k;
      std::string s;
      for (const auto& p : cols[k]) s += (s.empty() ? "" : ", ") + to_string(p);
      r.witness_text = "(" + s + ")";
      break;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Families and sweeps

template <CoefficientField F>
struct IdealCase {
  std::string desc;
  Ideal<F> ideal;
};

template <CoefficientField F>
struct ModuleCase {
  std::string desc;
  Subquotient<F> module;
};

template <CoefficientField F>
std::string ideal_desc(const Ideal<F>& I) {
  std::string s = "(";
  for (std::size_t k = 0; k < I.generators().size(); ++k) s += (k ? ", " : "") + to_string(I.generators()[k]);
  return s + ")";
}

/// All monomial ideals minimally generated by monomials of degree 1..max_degree,
/// with at most max_gens generators, in a fixed enumeration order; at most
/// `limit` of them.
template <CoefficientField F>
std::vector<IdealCase<F>> monomial_ideal_family(const RingPtr<F>& R, int max_degree, std::size_t max_gens,
                                                std::size_t limit) {
  require(max_degree >= 1 && max_gens >= 1, ErrorKind::kInvalidArgument, "family bounds must be positive");
  std::vector<Polynomial<F>> mons;
  for (int d = 1; d <= max_degree; ++d)
    for (const auto& m : R->ambient().monomials_of_degree(d)) {
      auto p = R->normal_form(R->one().mul_term(R->field().one(), m));
      if (!p.is_zero() && p.terms.size() == 1 && p.terms[0].m == m) mons.push_back(p);
    }
  std::vector<IdealCase<F>> out;
  std::vector<std::size_t> pick;
  // depth-first over increasing index subsets, keeping antichains only
  auto divides = [&](const Polynomial<F>& a, const Polynomial<F>& b) { return mono_divides(a.terms[0].m, b.terms[0].m); };
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (out.size() >= limit) return;
    if (!pick.empty()) {
      std::vector<Polynomial<F>> g;
      for (auto k : pick) g.push_back(mons[k]);
      Ideal<F> I(R, g);
      out.push_back({ideal_desc(I), I});
    }
    if (pick.size() == max_gens) return;
    for (std::size_t k = start; k < mons.size() && out.size() < limit; ++k) {
      bool ok = true;
      for (auto j : pick) ok = ok && !divides(mons[j], mons[k]) && !divides(mons[k], mons[j]);
      if (!ok) continue;
      pick.push_back(k);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

/// `count` random homogeneous ideals: 1..max_gens generators of degree
/// 1..max_degree, dense random coefficients, drawn from one seeded stream.
/// Zero or unit ideals are redrawn.
template <CoefficientField F>
std::vector<IdealCase<F>> random_ideal_family(const RingPtr<F>& R, std::size_t count, std::size_t max_gens,
                                              int max_degree, std::uint64_t seed) {
  require(max_degree >= 1 && max_gens >= 1, ErrorKind::kInvalidArgument, "family bounds must be positive");
  std::mt19937_64 rng(seed);
  std::vector<IdealCase<F>> out;
  while (out.size() < count) {
    std::size_t ng = 1 + rng() % max_gens;
    std::vector<Polynomial<F>> g;
    for (std::size_t k = 0; k < ng; ++k) g.push_back(R->random_form(1 + static_cast<int>(rng() % max_degree), rng));
    Ideal<F> I(R, g);
    if (I.is_zero() || I.is_unit()) continue;
    I = I.minimalized();
    out.push_back({ideal_desc(I), I});
  }
  return out;
}

/// The d-th syzygy modules im ∂_d of R/I for each ideal of the family.
template <CoefficientField F>
std::vector<ModuleCase<F>> syzygy_family(const std::vector<IdealCase<F>>& ideals, std::size_t d) {
  std::vector<ModuleCase<F>> out;
  for (const auto& c : ideals)
    out.push_back({"syz_" + std::to_string(d) + "(R/" + c.desc + ")",
                   syzygy_module(Subquotient<F>::cyclic(c.ideal), d)});
  return out;
}

template <CoefficientField F>
std::vector<ModuleCase<F>> quotient_family(const std::vector<IdealCase<F>>& ideals) {
  std::vector<ModuleCase<F>> out;
  for (const auto& c : ideals) out.push_back({"R/" + c.desc, Subquotient<F>::cyclic(c.ideal)});
  return out;
}

struct SweepRecord {
  std::size_t case_id = 0;
  std::string module_desc;
  std::string ideal_desc;
  std::size_t i = 0;
  ARResult result;
  std::string error;  // nonempty when the case failed with an error
};

struct SweepReport {
  std::string module_family;
  std::string ideal_family;
  std::size_t i_min = 0;
  std::size_t i_max = 0;
  int n_max = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;
  /// Max of h_weak over all records; nullopt if some record is unbounded in
  /// the window or failed.
  std::optional<int> max_h;
  std::optional<int> max_h_strong;
  double seconds = 0;
  /// What max_h certifies: only this window of n and these families.
  std::string scope() const {
    return "window- and family-certified: n <= " + std::to_string(n_max) + ", i in [" + std::to_string(i_min) + ", " +
           std::to_string(i_max) + "], the listed modules and ideals only";
  }
};

struct SweepOptions {
  std::size_t i_min = 0;
  std::size_t i_max = 0;
  int n_max = 6;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::string module_family;
  std::string ideal_family;
};

namespace detail {

// Fresh copies carry their own Gröbner caches, so workers share nothing
// mutable.
template <CoefficientField F>
Ideal<F> fresh(const Ideal<F>& I) {
  return Ideal<F>(I.ring_ptr(), I.generators());
}
template <CoefficientField F>
Subquotient<F> fresh(const Subquotient<F>& M) {
  return Subquotient<F>(M.ambient(), M.generators(), M.relations());
}

}  // namespace detail

/// Syzygetic Artin-Rees numbers for every (module, ideal, i) with
/// i in [i_min, i_max]; cases run on `jobs` threads and are merged in
/// enumeration order, so the report is independent of scheduling.
template <CoefficientField F>
SweepReport uniform_sweep(const std::vector<ModuleCase<F>>& modules, const std::vector<IdealCase<F>>& ideals,
                          const SweepOptions& opt) {
  require(!modules.empty() && !ideals.empty(), ErrorKind::kInvalidArgument, "sweep over an empty family");
  require(opt.i_min <= opt.i_max, ErrorKind::kInvalidArgument, "i_min exceeds i_max");
  require(opt.n_max >= 1, ErrorKind::kInvalidArgument, "n_max must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.module_family = opt.module_family;
  rep.ideal_family = opt.ideal_family;
  rep.i_min = opt.i_min;
  rep.i_max = opt.i_max;
  rep.n_max = opt.n_max;
  rep.seed = opt.seed;
  const std::size_t ni = opt.i_max - opt.i_min + 1;
  rep.records.resize(modules.size() * ideals.size() * ni);
  // one task per (module, ideal) pair; the module's resolution is shared
  // across its i values
  const std::size_t tasks = modules.size() * ideals.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const auto& mc = modules[t / ideals.size()];
      const auto& ic = ideals[t % ideals.size()];
      for (std::size_t k = 0; k < ni; ++k) {
        auto& rec = rep.records[t * ni + k];
        rec.case_id = t * ni + k;
        rec.module_desc = mc.desc;
        rec.ideal_desc = ic.desc;
        rec.i = opt.i_min + k;
      }
      try {
        auto M = detail::fresh(mc.module);
        auto I = detail::fresh(ic.ideal);
        auto res = free_resolution(M, opt.i_max + 1);
        auto rs = syzygetic_ar(res, I, opt.i_min, opt.i_max, opt.n_max);
        for (std::size_t k = 0; k < ni; ++k) {
          rs[k].id = "case " + std::to_string(t * ni + k);
          rep.records[t * ni + k].result = std::move(rs[k]);
        }
      } catch (const std::exception& e) {
        for (std::size_t k = 0; k < ni; ++k) rep.records[t * ni + k].error = e.what();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, tasks));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  bool bounded = true, bounded_strong = true;
  int mx = 0, mxs = 0;
  for (const auto& r : rep.records) {
    if (!r.error.empty() || !r.result.h_weak) {
      bounded = false;
    } else {
      mx = std::max(mx, *r.result.h_weak);
    }
    if (!r.error.empty() || !r.result.h_strong) {
      bounded_strong = false;
    } else {
      mxs = std::max(mxs, *r.result.h_strong);
    }
  }
  if (bounded) rep.max_h = mx;
  if (bounded_strong) rep.max_h_strong = mxs;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace arw
