#include <gtest/gtest.h>

#include <random>
#include <set>

#include "arw/artin_rees/artin_rees.hpp"
#include "common.hpp"

using namespace testing_support;
using arw::FreeModule;
using Sub = arw::Subquotient<K>;

namespace {

// Monomial ideals of k[x,y] as sets of exponent pairs; a brute-force model
// independent of Gröbner bases.
using Mon = std::pair<int, int>;
using MonIdeal = std::set<Mon>;

bool mdiv(Mon a, Mon b) { return a.first <= b.first && a.second <= b.second; }

bool mcontains(const MonIdeal& I, Mon m) {
  for (auto g : I)
    if (mdiv(g, m)) return true;
  return false;
}

bool mcontains(const MonIdeal& I, const MonIdeal& J) {
  for (auto m : J)
    if (!mcontains(I, m)) return false;
  return true;
}

MonIdeal mproduct(const MonIdeal& I, const MonIdeal& J) {
  MonIdeal out;
  for (auto a : I)
    for (auto b : J) out.insert({a.first + b.first, a.second + b.second});
  return out;
}

MonIdeal mpower(const MonIdeal& I, int n) {
  MonIdeal P{{0, 0}};
  for (int k = 0; k < n; ++k) P = mproduct(P, I);
  return P;
}

MonIdeal mintersect(const MonIdeal& I, const MonIdeal& J) {
  MonIdeal out;
  for (auto a : I)
    for (auto b : J) out.insert({std::max(a.first, b.first), std::max(a.second, b.second)});
  return out;
}

// Weak AR number of A ⊆ R, with the unbounded-in-window rule.
std::optional<int> oracle_weak(const MonIdeal& A, const MonIdeal& I, int n_max) {
  for (int h = 0; h < n_max; ++h) {
    bool ok = true;
    for (int n = h; n <= n_max && ok; ++n) ok = mcontains(mproduct(mpower(I, n - h), A), mintersect(mpower(I, n), A));
    if (ok) return h;
  }
  return std::nullopt;
}

std::optional<int> oracle_reduction(const MonIdeal& J, const MonIdeal& I, int k_max) {
  for (int k = 0; k <= k_max; ++k)
    if (mcontains(mproduct(J, mpower(I, k)), mpower(I, k + 1))) return k;
  return std::nullopt;
}

std::vector<std::string> to_strings(const MonIdeal& I) {
  std::vector<std::string> out;
  for (auto [a, b] : I) out.push_back("x^" + std::to_string(a) + "*y^" + std::to_string(b));
  return out;
}

MonIdeal random_mon_ideal(std::mt19937_64& rng, int max_deg) {
  MonIdeal I;
  std::size_t n = 1 + rng() % 3;
  while (I.size() < n) {
    int d = 1 + static_cast<int>(rng() % max_deg);
    int a = static_cast<int>(rng() % (d + 1));
    I.insert({a, d - a});
  }
  return I;
}

Sub ideal_submodule(const RingP& R, const std::vector<std::string>& gens) {
  std::vector<arw::Column<K>> cols;
  for (const auto& g : gens) cols.push_back({R->parse(g)});
  return Sub::submodule(FreeModule<K>(R, 1), arw::Matrix<K>(1, cols));
}

}  // namespace

TEST(ArtinRees, Examples) {
  auto R = ring({"x", "y"});
  auto m = ideal(R, {"x", "y"});
  auto r = arw::artin_rees_number(ideal_submodule(R, {"x"}), m, 6);
  ASSERT_TRUE(r.h_weak);
  EXPECT_EQ(*r.h_weak, 1);
  EXPECT_EQ(r.status(), "window-certified");

  auto full = arw::artin_rees_number(Sub::submodule(FreeModule<K>(R, 2), arw::Matrix<K>::identity(*R, 2)),
                                     ideal(R, {"x^2", "y"}), 4);
  EXPECT_EQ(full.h_weak, 0);
  EXPECT_EQ(full.h_strong, 0);

  auto zero = arw::artin_rees_number(Sub::submodule(FreeModule<K>(R, 1), arw::Matrix<K>(1, {})), m, 4);
  EXPECT_EQ(zero.h_weak, 0);
}

TEST(ArtinRees, NotContainedThrows) {
  auto R = ring({"x", "y"});
  EXPECT_THROW(arw::artin_rees_number(ideal_submodule(R, {"y"}), ideal_submodule(R, {"x"}), ideal(R, {"x"}), 3),
               arw::Error);
  EXPECT_THROW(arw::artin_rees_number(ideal_submodule(R, {"y"}), ideal(R, {"x"}), 0), arw::Error);
}

TEST(ArtinRees, StrongDominatesWeakAndMonotone) {
  auto R = ring({"x", "y", "z"});
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases = {
      {{"x*y", "z^2"}, {"x", "y"}},
      {{"x^2 + y*z"}, {"x", "y", "z"}},
      {{"x*z", "y*z"}, {"x^2", "y"}},
  };
  for (const auto& [a, i] : cases) {
    auto r = arw::artin_rees_number(ideal_submodule(R, a), ideal(R, i), 5);
    ASSERT_TRUE(r.h_weak && r.h_strong);
    EXPECT_GE(*r.h_strong, *r.h_weak);
    // weak containment for h implies it for every larger h
    for (int h = *r.h_weak; h < r.n_max; ++h)
      for (int n = h; n <= r.n_max; ++n) EXPECT_LE(n - h, r.weak_exponent[n]);
  }
}

TEST(ArtinRees, MonomialOracle) {
  auto R = ring({"x", "y"});
  std::mt19937_64 rng(41);
  for (int c = 0; c < 12; ++c) {
    auto A = random_mon_ideal(rng, 3);
    auto I = random_mon_ideal(rng, 2);
    const int n_max = 5;
    auto r = arw::artin_rees_number(ideal_submodule(R, to_strings(A)), IdealK(R, to_strings(I)), n_max);
    EXPECT_EQ(r.h_weak, oracle_weak(A, I, n_max)) << "case " << c;
  }
}

TEST(SyzygeticAR, Examples) {
  auto R = ring({"x", "y"});
  auto m = ideal(R, {"x", "y"});
  auto r = arw::syzygetic_ar(Sub::cyclic(m), m, 2, 2, 4);
  EXPECT_EQ(r[0].h_weak, 0);
  auto ci = arw::syzygetic_ar(Sub::cyclic(ideal(R, {"x^2", "y^2"})), m, 2, 2, 4);
  EXPECT_EQ(ci[0].h_weak, 0);
}

TEST(SyzygeticAR, KoszulContrast) {
  auto R = ring({"x", "y"});
  auto m = ideal(R, {"x", "y"});
  for (int t = 2; t <= 4; ++t) {
    auto xt = "x^" + std::to_string(t), yt = "y^" + std::to_string(t);
    auto rs = arw::syzygetic_ar(Sub::cyclic(ideal(R, {xt, yt})), m, 0, 3, 8);
    ASSERT_TRUE(rs[0].h_weak);
    EXPECT_GE(*rs[0].h_weak, t);
    EXPECT_EQ(rs[0].h_weak, oracle_weak({{t, 0}, {0, t}}, {{1, 0}, {0, 1}}, 8));
    EXPECT_EQ(rs[2].h_weak, 0);
    EXPECT_EQ(rs[3].h_weak, 0);
  }
}

TEST(Reduction, Examples) {
  auto R = ring({"x", "y"});
  auto I = ideal(R, {"x^2", "x*y", "y^2"});
  auto r = arw::reduction_number(ideal(R, {"x^2", "y^2"}), I, 4);
  ASSERT_TRUE(r.k);
  EXPECT_EQ(*r.k, 1);
  EXPECT_TRUE(r.consequence_holds);
  EXPECT_EQ(r.consequence_window, 6);
  EXPECT_EQ(arw::reduction_number(I, I, 4).k, 0);
  // (x^3, y^3) ⊆ (x,y)^3: I^2 = (x,y)^6 = J I (see the decisions ledger)
  EXPECT_EQ(arw::reduction_number(ideal(R, {"x^3", "y^3"}), arw::ideal_power(ideal(R, {"x", "y"}), 3), 4).k, 1);
  EXPECT_THROW(arw::reduction_number(ideal(R, {"x"}), I, 3), arw::Error);
}

TEST(Reduction, WindowExceeded) {
  auto R = ring({"x", "y"});
  // (x^2) is not a reduction of (x^2, y^2)
  auto r = arw::reduction_number(ideal(R, {"x^2"}), ideal(R, {"x^2", "y^2"}), 3);
  EXPECT_FALSE(r.k);
}

TEST(Reduction, MonomialOracleAndZeroIffEqual) {
  auto R = ring({"x", "y"});
  std::mt19937_64 rng(8);
  for (int c = 0; c < 10; ++c) {
    auto I = random_mon_ideal(rng, 3);
    MonIdeal J;
    for (auto g : I)
      if (rng() % 2) J.insert(g);
    if (J.empty()) J.insert(*I.begin());
    for (auto g : I)
      if (rng() % 3 == 0) J.insert({g.first + 1, g.second});
    IdealK Ik(R, to_strings(I)), Jk(R, to_strings(J));
    auto r = arw::reduction_number(Jk, Ik, 3);
    EXPECT_EQ(r.k, oracle_reduction(J, I, 3)) << c;
    EXPECT_EQ(r.k == 0, Jk.equals(Ik));
  }
}

TEST(MainReduction, Examples) {
  auto R = ring({"x", "y"});
  FreeModule<K> G(R, 2);
  // N = ker(R^2 -> R/(x,y), e_1, e_2 -> 1)
  auto N = Sub::submodule(G, arw::parse_matrix(*R, "x, y, 1; 0, 0, -1"));
  auto x = polys(R, {"x", "y"});
  auto r = arw::main_reduction_check(N, x, 0, 4, 2);
  EXPECT_TRUE(r.holds) << r.witness_text;
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(arw::main_reduction_check(N, x, 1, n, n).holds);
  // repeated element: I_1 = I_2, so the right side contains I^{n-h} G ∩ N
  auto xx = polys(R, {"x", "x"});
  EXPECT_TRUE(arw::main_reduction_check(N, xx, 0, 3, 0).holds);
  EXPECT_THROW(arw::main_reduction_check(N, x, 2, 3, 1), arw::Error);
  EXPECT_THROW(arw::main_reduction_check(N, x, 0, 1, 2), arw::Error);
}

TEST(MainReduction, FailureHasWitness) {
  // N = (x) ⊆ R, x = (y, x), i = 0: (x,y)^2 ∩ (x) ⊆ (x,y)^2 (x) + (y)^2 ∩ (x)
  // fails for h = 0 because x^2 ∉ (x)(x,y)^2 + (x y^2)
  auto R = ring({"x", "y"});
  auto N = ideal_submodule(R, {"x"});
  auto r = arw::main_reduction_check(N, polys(R, {"y", "x"}), 0, 2, 0);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.witness.has_value());
  EXPECT_FALSE(r.witness_text.empty());
  EXPECT_TRUE(arw::main_reduction_check(N, polys(R, {"y", "x"}), 0, 2, 1).holds);
}

TEST(Families, MonomialEnumeration) {
  auto R = ring({"x", "y"});
  auto fam = arw::monomial_ideal_family(R, 2, 3, 1000);
  // antichains among x, y, x^2, xy, y^2 of size <= 3
  std::set<std::string> seen;
  for (const auto& c : fam) seen.insert(c.desc);
  EXPECT_EQ(seen.size(), fam.size());
  EXPECT_EQ(fam.size(), 12u);  // 5 singletons, 6 pairs, 1 triple
  EXPECT_EQ(arw::monomial_ideal_family(R, 2, 3, 4).size(), 4u);
}

TEST(Families, RandomIsSeeded) {
  auto R = ring({"x", "y", "z"});
  auto a = arw::random_ideal_family(R, 5, 3, 2, 99);
  auto b = arw::random_ideal_family(R, 5, 3, 2, 99);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].desc, b[k].desc);
  auto c = arw::random_ideal_family(R, 5, 3, 2, 100);
  bool differ = false;
  for (std::size_t k = 0; k < a.size(); ++k) differ = differ || a[k].desc != c[k].desc;
  EXPECT_TRUE(differ);
}

TEST(Sweep, SmallFamilyOverPlane) {
  auto R = ring({"x", "y"});
  std::vector<arw::IdealCase<K>> mods_i = {{"(x,y)", ideal(R, {"x", "y"})},
                                           {"(x2,y2)", ideal(R, {"x^2", "y^2"})},
                                           {"(x2,xy,y2)", ideal(R, {"x^2", "x*y", "y^2"})}};
  std::vector<arw::IdealCase<K>> ideals = {{"(x,y)", ideal(R, {"x", "y"})},
                                           {"(x2,y2)", ideal(R, {"x^2", "y^2"})},
                                           {"(x,y2)", ideal(R, {"x", "y^2"})}};
  arw::SweepOptions opt;
  opt.i_min = 2;
  opt.i_max = 2;
  opt.n_max = 6;
  auto rep = arw::uniform_sweep(arw::quotient_family(mods_i), ideals, opt);
  EXPECT_EQ(rep.records.size(), 9u);
  ASSERT_TRUE(rep.max_h);
  EXPECT_EQ(*rep.max_h, 0);

  opt.i_min = opt.i_max = 0;
  auto one = arw::uniform_sweep(arw::quotient_family(std::vector<arw::IdealCase<K>>{mods_i[1]}),
                                std::vector<arw::IdealCase<K>>{ideals[0]}, opt);
  ASSERT_EQ(one.records.size(), 1u);
  EXPECT_EQ(one.max_h, one.records[0].result.h_weak);
  EXPECT_EQ(one.max_h, 2);

  opt.i_min = 5;
  opt.i_max = 6;
  EXPECT_EQ(arw::uniform_sweep(arw::quotient_family(mods_i), ideals, opt).max_h, 0);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  auto R = ring({"x", "y", "z"}, {"x^3 + y^3 + z^3"});
  auto ideals = arw::random_ideal_family(R, 3, 2, 2, 5);
  auto mods = arw::syzygy_family(arw::random_ideal_family(R, 2, 2, 1, 6), 2);
  arw::SweepOptions opt;
  opt.i_min = 2;
  opt.i_max = 2;
  opt.n_max = 3;
  auto a = arw::uniform_sweep(mods, ideals, opt);
  opt.jobs = 3;
  auto b = arw::uniform_sweep(mods, ideals, opt);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].module_desc, b.records[k].module_desc);
    EXPECT_EQ(a.records[k].result.h_weak, b.records[k].result.h_weak);
    EXPECT_EQ(a.records[k].result.weak_exponent, b.records[k].result.weak_exponent);
    EXPECT_TRUE(a.records[k].error.empty()) << a.records[k].error;
  }
  EXPECT_EQ(a.max_h, b.max_h);
}

TEST(Sweep, EmptyFamilyThrows) {
  auto R = ring({"x"});
  EXPECT_THROW(arw::uniform_sweep(std::vector<arw::ModuleCase<K>>{},
                                  std::vector<arw::IdealCase<K>>{{"(x)", ideal(R, {"x"})}}, arw::SweepOptions{}),
               arw::Error);
}
