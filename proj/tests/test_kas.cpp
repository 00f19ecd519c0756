#include <gtest/gtest.h>

#include "arw/kas/kas.hpp"
#include "common.hpp"

using namespace testing_support;
using arw::FreeModule;
using Sub = arw::Subquotient<K>;

namespace {

Sub free_rank_one(const RingP& R) { return Sub::submodule(FreeModule<K>(R, 1), arw::Matrix<K>::identity(*R, 1)); }

// H^0_m(R) = (0 :_R m^∞) directly, so a_0 = (0 : (0 : m^∞)).
IdealK a0_oracle(const RingP& R) {
  auto zero = IdealK::zero(R);
  return arw::ideal_quotient(zero, arw::saturation(zero, IdealK::maximal(R)));
}

}  // namespace

TEST(Bounds, SpotValues) {
  EXPECT_EQ(arw::e1_bound(5, 3, 0), 3u);
  EXPECT_EQ(arw::e1_bound(2, 2, 1), 6u);
  EXPECT_EQ(arw::e_bound(2, 2, 1), 10u);
  EXPECT_EQ(arw::e1_bound(1, 1, 0), 1u);
  // 3 + 5 * E_1(2,2,1)
  EXPECT_EQ(arw::e1_bound(3, 3, 2), 33u);
  // 3 + 5 * (3 + 5 * E(3,1,0)) = 3 + 5 * 18
  EXPECT_EQ(arw::e_bound(3, 3, 2), 93u);
}

TEST(Bounds, RejectsBadArguments) {
  EXPECT_THROW(arw::e_bound(1, 2, 0), arw::Error);
  EXPECT_THROW(arw::e1_bound(3, 2, 2), arw::Error);
  EXPECT_THROW(arw::e1_bound(3, 2, -1), arw::Error);
}

TEST(Bounds, TableSatisfiesRecursions) {
  arw::BoundFunctionTable T;
  auto rows = T.table(6);
  // sum over delta of delta(delta+1)/2
  EXPECT_EQ(rows.size(), 56u);
  for (const auto& b : rows) {
    EXPECT_TRUE(b.e_recursion_ok);
    EXPECT_TRUE(b.e1_recursion_ok);
    EXPECT_TRUE(b.e1_le_e) << b.delta << "," << b.nu << "," << b.tau;
    EXPECT_GT(b.e1, 0u);
    if (b.tau == 0) {
      EXPECT_EQ(b.e, static_cast<std::uint64_t>(b.delta - b.nu + 1));
    }
  }
}

TEST(Bounds, OverflowIsReported) {
  arw::BoundFunctionTable T;
  try {
    T.e(60, 60, 59);
    FAIL() << "expected overflow";
  } catch (const arw::Error& e) {
    EXPECT_EQ(e.kind(), arw::ErrorKind::kLimit);
  }
}

TEST(CohomologyAnnihilators, Examples) {
  auto R1 = ring({"x", "y"}, {"x^2", "x*y"});
  auto ca = arw::cohomology_annihilators(R1);
  ASSERT_EQ(ca.dim, 1);
  EXPECT_TRUE(ca.a[0].equals(ideal(R1, {"x", "y"})));
  EXPECT_TRUE(ca.certified());
  EXPECT_EQ(ca.b_dims[0], 0);

  auto R2 = ring({"x", "y"}, {"x*y"});
  auto c2 = arw::cohomology_annihilators(R2);
  ASSERT_EQ(c2.a.size(), 1u);
  EXPECT_TRUE(c2.a[0].is_unit());

  auto R3 = ring({"x", "y"});
  auto c3 = arw::cohomology_annihilators(R3);
  ASSERT_EQ(c3.a.size(), 2u);
  EXPECT_TRUE(c3.a[0].is_unit());
  EXPECT_TRUE(c3.a[1].is_unit());
}

TEST(CohomologyAnnihilators, TwoPlanesMeetingAtAPoint) {
  // depth 1, dim 2, H^1_m(R) = k
  auto R = ring({"x", "y", "z", "w"}, {"x*z", "x*w", "y*z", "y*w"});
  auto ca = arw::cohomology_annihilators(R);
  ASSERT_EQ(ca.dim, 2);
  EXPECT_TRUE(ca.a[0].is_unit());
  EXPECT_TRUE(ca.a[1].equals(IdealK::maximal(R)));
  EXPECT_TRUE(ca.certified());
  EXPECT_EQ(ca.b_dims, (std::vector<int>{-1, 0}));
}

TEST(CohomologyAnnihilators, ZeroethAgainstSaturationOracle) {
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases = {
      {{"x", "y"}, {"x^2", "x*y"}},
      {{"x", "y"}, {"x^3", "x*y^2"}},
      {{"x", "y"}, {"x^2*y", "x*y^2"}},
      {{"x", "y", "z"}, {"x^2", "x*y", "x*z"}},
      {{"x", "y", "z"}, {"x*z", "y*z", "z^2"}},
      {{"x", "y", "z"}, {"x^3+y^3+z^3"}},
  };
  for (const auto& [vars, defs] : cases) {
    auto R = ring(vars, defs);
    auto ca = arw::cohomology_annihilators(R);
    ASSERT_GE(ca.dim, 1) << R->describe();
    EXPECT_TRUE(ca.a[0].equals(a0_oracle(R))) << R->describe() << ": " << ca.a[0].describe();
    EXPECT_TRUE(ca.certified()) << R->describe();
  }
}

TEST(CohomologyAnnihilators, SyzygiesAreAnnihilatedByB) {
  auto R = ring({"x", "y", "z", "w"}, {"x*z", "x*w", "y*z", "y*w"});
  auto ca = arw::cohomology_annihilators(R);
  auto M = arw::syzygy_module(Sub::cyclic(ideal(R, {"x+z", "y+w"})), 2);
  auto inst = arw::syzygy_annihilation_instances(ca, M, 2);
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_TRUE(inst[0]);
  EXPECT_TRUE(inst[1]);
}

TEST(SystemOfParameters, Examples) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(arw::is_system_of_parameters(polys(R, {"x", "y"}), R));
  EXPECT_FALSE(arw::is_system_of_parameters(polys(R, {"x", "x*y"}), R));
  EXPECT_FALSE(arw::is_system_of_parameters(polys(R, {"x"}), R));
  EXPECT_TRUE(arw::is_system_of_parameters(polys(R, {"x^2", "y^3"}), R));
}

TEST(WellSuited, Examples) {
  auto R = ring({"x", "y"});
  auto r = arw::well_suited_check(polys(R, {"x+y", "x-y"}), polys(R, {"x", "y"}), R);
  EXPECT_TRUE(r.ok);
  // x itself, then (1,1) and (2,2) with one x each, then (1,2) alone
  EXPECT_EQ(r.checked, 6u);
  auto bad = arw::well_suited_check(polys(R, {"x", "y"}), polys(R, {"x", "y"}), R);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.failures.size(), 2u);
  EXPECT_THROW(arw::well_suited_check(polys(R, {"x"}), polys(R, {"x", "y"}), R), arw::Error);
}

TEST(KASCandidate, RegularRing) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 7, 2);
  ASSERT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.prescribed_exponent, 6u);
  EXPECT_EQ(c.exponent, 1);
  for (const auto& b : c.base) EXPECT_EQ(b.degree(), 1);
  EXPECT_TRUE(arw::is_system_of_parameters(c.elements(), R));
  EXPECT_TRUE(arw::recheck_candidate(c).ok);
  EXPECT_EQ(c.content_hash().size(), 16u);
  EXPECT_NE(c.content_hash(), c.with_exponent(2).content_hash());
}

TEST(KASCandidate, NonCohenMacaulayCurve) {
  auto R = ring({"x", "y"}, {"x^2", "x*y"});
  auto c = arw::kas_candidate(R, 11, 2);
  ASSERT_EQ(c.dim(), 1u);
  EXPECT_EQ(c.prescribed_exponent, 1u);
  EXPECT_TRUE(c.membership[0]);
  EXPECT_EQ(c.tail_dims[0], 0);
  // c_1 = y + λx avoids the minimal prime (x)
  EXPECT_FALSE(IdealK(R, {"x"}).contains(c.base[0]));
  EXPECT_TRUE(arw::recheck_candidate(c).ok);
}

TEST(KASCandidate, Deterministic) {
  auto R = ring({"x", "y", "z"}, {"x^3+y^3+z^3"});
  auto a = arw::kas_candidate(R, 5, 2);
  auto b = arw::kas_candidate(R, 5, 2);
  EXPECT_EQ(a.content_hash(), b.content_hash());
  EXPECT_TRUE(arw::recheck_candidate(a).ok);
}

TEST(KASCandidate, FailuresCarryCertificates) {
  auto R = ring({"x", "y"}, {"x^2", "x*y"});
  try {
    arw::kas_candidate(R, 1, 0);
    FAIL() << "expected failure";
  } catch (const arw::Error& e) {
    EXPECT_EQ(e.kind(), arw::ErrorKind::kSearchExhausted);
    EXPECT_NE(std::string(e.what()).find("too small"), std::string::npos);
  }
  try {
    arw::kas_candidate(R, 1, 1, 0);
    FAIL() << "expected failure";
  } catch (const arw::Error& e) {
    EXPECT_EQ(e.kind(), arw::ErrorKind::kSearchExhausted);
    EXPECT_NE(std::string(e.what()).find("no draw passed"), std::string::npos);
  }
}

TEST(KASVerify, RegularRingFreeModule) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  std::vector<arw::ModuleCase<K>> mods{{"R", free_rank_one(R)}};
  auto sops = arw::random_sop_family(c, 2, 9);
  auto rep = arw::kas_verify(c, mods, sops, {1, 2}, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.skipped.empty());
  for (const auto& ch : rep.checks) {
    EXPECT_LE(ch.k, ch.j);
    EXPECT_LE(ch.j, ch.v);
    EXPECT_LE(ch.n, ch.j);
  }
  // per sop: k=1 (j=1: n=1, v=1,2; j=2: t=1,2 x n=1,2 x v=2) + k=2 (j=2: n=1,2)
  EXPECT_EQ(rep.checks.size(), 2u * (2 + 4 + 2));
}

TEST(KASVerify, CurveSyzygy) {
  auto R = ring({"x", "y"}, {"x^2", "x*y"});
  auto c = arw::kas_candidate(R, 11, 2);
  std::vector<arw::ModuleCase<K>> mods{
      {"syz_1(R/m)", arw::syzygy_module(Sub::cyclic(IdealK::maximal(R)), 1)},
      {"syz_1(R/(y))", arw::syzygy_module(Sub::cyclic(ideal(R, {"y"})), 1)},
  };
  auto sops = arw::random_sop_family(c, 3, 4);
  auto rep = arw::kas_verify(c, mods, sops, {1, 2}, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks.size(), 2u * 3u);
}

TEST(KASVerify, SkipsNonParameterPrefixes) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  std::vector<arw::ModuleCase<K>> mods{{"R", free_rank_one(R)}};
  // x_1 = c_2 makes (x_1, c_2) fail at k = 1
  std::vector<std::vector<Poly>> sops{{c.elements()[1], R->parse("x+2*y")}};
  auto rep = arw::kas_verify(c, mods, sops, {1}, 2);
  ASSERT_EQ(rep.skipped.size(), 1u);
  EXPECT_EQ(rep.skipped[0].k, 1);
}

TEST(KASVerify, HypersurfaceSecondSyzygy) {
  auto R = ring({"x", "y", "z"}, {"x^3+y^3+z^3"});
  auto c = arw::kas_candidate(R, 5, 2);
  // (x, y) is regular here, so its second syzygy is free; R/m gives a
  // non-free one
  std::vector<arw::ModuleCase<K>> mods{{"syz_2(R/(x,y))", arw::syzygy_module(Sub::cyclic(ideal(R, {"x", "y"})), 2)},
                                       {"syz_2(R/m)", arw::syzygy_module(Sub::cyclic(IdealK::maximal(R)), 2)}};
  ASSERT_EQ(mods[1].module.generators().cols(), 4u);
  auto sops = arw::random_sop_family(c, 2, 2);
  auto rep = arw::kas_verify(c, mods, sops, {1, 2}, 2);
  EXPECT_TRUE(rep.passed()) << rep.failures << " failures";
  EXPECT_TRUE(rep.skipped.empty());
}

TEST(SpecialReduction, MaximalIdeal) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto s = arw::special_reduction(IdealK::maximal(R), c, 17, 3);
  ASSERT_EQ(s.x.size(), 2u);
  EXPECT_TRUE(s.well_suited.ok);
  EXPECT_EQ(s.reduction_of_I, 0);
  ASSERT_EQ(s.certificates.size(), 4u);
  for (const auto& cert : s.certificates) EXPECT_EQ(cert.k, 0) << cert.condition;
}

TEST(SpecialReduction, MaximalIdealSquared) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto s = arw::special_reduction(ideal(R, {"x^2", "x*y", "y^2"}), c, 17, 3);
  EXPECT_EQ(s.reduction_of_I, 1);
  for (const auto& cert : s.certificates) EXPECT_LE(*cert.k, 1) << cert.condition;
  EXPECT_TRUE(s.accepted(3));
}

TEST(SpecialReduction, RejectsNonPrimary) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  EXPECT_THROW(arw::special_reduction(ideal(R, {"x"}), c, 1, 3), arw::Error);
}

TEST(FromAGT, RegularRingFreeModule) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto M = free_rank_one(R);
  auto x = polys(R, {"x+y", "x-y"});
  for (int n = 1; n <= 2; ++n) {
    auto r1 = arw::fromagt_checks(c, x, M, 1, 1, n, {}, 1);
    EXPECT_TRUE(r1.all_pass());
    auto r2 = arw::fromagt_checks(c, x, M, 1, 2, n, {2}, 1);
    EXPECT_TRUE(r2.all_pass());
    EXPECT_EQ(r2.items.size(), 3u);
  }
}

TEST(FromAGT, ColonItemAgainstSaturation) {
  // for M = R the colon module is the saturation (I^n : c^∞)
  auto R = ring({"x", "y"}, {"x^2", "x*y"});
  auto c = arw::kas_candidate(R, 11, 2);
  auto M = free_rank_one(R);
  const auto ci = c.elements()[0];
  for (int n = 1; n <= 3; ++n) {
    auto In = arw::ideal_power(ideal(R, {"x+y"}), n);
    auto C = arw::colon_capture(M, In, ci);
    std::vector<Poly> gens;
    for (const auto& col : C.generators().columns()) gens.push_back(col[0]);
    EXPECT_TRUE(IdealK(R, gens).equals(arw::saturation(In, ci))) << n;
  }
}

TEST(FromAGT, ColonItemOnlyWithKoszulTail) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto M = free_rank_one(R);
  auto x = polys(R, {"x+y", "x-y"});
  auto r = arw::fromagt_checks(c, x, M, 2, 2, 2, {}, 1);
  EXPECT_EQ(r.items.size(), 2u);
  for (const auto& it : r.items) EXPECT_NE(it.item, 4);
  // the literal j = i = d reading: (I_2^2 : c_2^∞) = R, and c_2 is not in I_2^2
  auto I2 = arw::ideal_power(IdealK(R, x), 2);
  const auto c2 = c.elements()[1];
  EXPECT_TRUE(arw::saturation(I2, c2).is_unit());
  EXPECT_FALSE(I2.contains(c2));
}

TEST(FromAGT, HypersurfaceSecondSyzygy) {
  auto R = ring({"x", "y", "z"}, {"x^3+y^3+z^3"});
  auto c = arw::kas_candidate(R, 5, 2);
  auto M = arw::syzygy_module(Sub::cyclic(IdealK::maximal(R)), 2);
  auto x = arw::special_reduction(IdealK::maximal(R), c, 3, 3).x;
  for (int n = 1; n <= 3; ++n) {
    auto a = arw::fromagt_checks(c, x, M, 1, 1, n, {}, 1);
    EXPECT_TRUE(a.well_suited);
    EXPECT_TRUE(a.all_pass()) << n;
    auto b = arw::fromagt_checks(c, x, M, 1, 2, n, {1}, 1);
    EXPECT_TRUE(b.all_pass()) << n;
  }
}

TEST(FromAGT, RangeChecks) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto M = free_rank_one(R);
  auto x = polys(R, {"x+y", "x-y"});
  EXPECT_THROW(arw::fromagt_checks(c, x, M, 2, 1, 1, {}, 1), arw::Error);
  EXPECT_THROW(arw::fromagt_checks(c, x, M, 1, 3, 1, {1, 1}, 1), arw::Error);
  EXPECT_THROW(arw::fromagt_checks(c, x, M, 1, 2, 1, {}, 1), arw::Error);
}

TEST(ComplexAnnihilation, PowerComplexOverRegularRing) {
  auto R = ring({"x", "y"});
  auto c = arw::kas_candidate(R, 3, 1);
  auto G = arw::power_complex(R, polys(R, {"x", "y"}), 2);
  auto rep = arw::kas_complex_annihilation(c, G, free_rank_one(R));
  EXPECT_TRUE(rep.hypotheses);
  EXPECT_EQ(rep.t, 1);
}

TEST(ComplexAnnihilation, KoszulOnHypersurfaceSyzygy) {
  auto R = ring({"x", "y", "z"}, {"x^3+y^3+z^3"});
  auto c = arw::kas_candidate(R, 5, 2);
  auto M = arw::syzygy_module(Sub::cyclic(ideal(R, {"x", "y"})), 2);
  auto G = arw::koszul_complex(R, polys(R, {"x", "y"}));
  auto rep = arw::kas_complex_annihilation(c, G, M);
  EXPECT_TRUE(rep.hypotheses);
  ASSERT_TRUE(rep.t.has_value());
  EXPECT_EQ(rep.tried.front(), 1);
}

TEST(ComplexAnnihilation, ReportsFailedHypotheses) {
  // rank G_1 = 3 but rank ∂_1 + rank ∂_2 = 2
  auto fx = arw::parse_complex_fixture(K(32003), "ring: x, y\nd1: x, y, x+y\nd2: y; -x; 0\n");
  auto c = arw::kas_candidate(fx.ring, 3, 1);
  auto rep = arw::kas_complex_annihilation(c, fx.complex, free_rank_one(fx.ring));
  EXPECT_FALSE(rep.standard_conditions);
  EXPECT_FALSE(rep.hypotheses);
  EXPECT_FALSE(rep.note.empty());
}

TEST(KASVerify, TwoPlanesSecondSyzygiesAndCalibration) {
  auto R = ring({"x", "y", "z", "w"}, {"x*z", "x*w", "y*z", "y*w"});
  auto c = arw::kas_candidate(R, 5, 2);
  EXPECT_TRUE(arw::recheck_candidate(c).ok);
  std::vector<arw::ModuleCase<K>> mods;
  for (const auto& g : std::vector<std::vector<std::string>>{{"x", "y", "z", "w"}, {"x+z", "y+w"}, {"x^2", "z"}})
    mods.push_back({"syz_2", arw::syzygy_module(Sub::cyclic(ideal(R, g)), 2)});
  auto sops = arw::random_sop_family(c, 2, 2);
  auto rep = arw::kas_verify(c, mods, sops, {1, 2}, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks.size(), 48u);
  EXPECT_EQ(arw::calibrate_exponent(c, mods, sops, {1, 2}, 2), 1);
  EXPECT_EQ(c.empirical_exponent, 1);
}
