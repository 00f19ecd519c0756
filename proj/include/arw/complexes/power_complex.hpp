#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arw/complexes/determinantal.hpp"
#include "arw/resolution/free_resolution.hpp"

namespace arw {

/// The n x (n+h-1) banded matrix whose row r holds x_1..x_h starting in
/// column r; its n x n minors generate (x_1..x_h)^n.
template <CoefficientField F>
Matrix<F> banded_matrix(const QuotientRing<F>& R, const std::vector<Polynomial<F>>& x, std::size_t n) {
  require(!x.empty() && n >= 1, ErrorKind::kInvalidArgument, "banded matrix needs a nonempty sequence and n >= 1");
  const std::size_t h = x.size();
  auto B = Matrix<F>::zero(R, n, n + h - 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < h; ++k) B(r, r + k) = R.normal_form(x[k]);
  return B;
}

/// Finite free resolution of R/J^n for J generated by a regular sequence
/// x_1..x_h: the minimal graded resolution, of length h.
template <CoefficientField F>
ChainComplex<F> power_complex(const RingPtr<F>& R, const std::vector<Polynomial<F>>& x, std::size_t n) {
  require(!x.empty(), ErrorKind::kInvalidArgument, "power complex of an empty sequence");
  require(n >= 1, ErrorKind::kInvalidArgument, "power complex needs n >= 1");
  Ideal<F> J(R, x);
  require(J.size() == x.size(), ErrorKind::kPrecondition, "power complex generators must be nonzero and distinct");
  const int g = grade_or_infinite(J);
  require(g != kInfiniteGrade && g == static_cast<int>(x.size()), ErrorKind::kPrecondition,
          "power complex needs a regular sequence, but grade " + J.describe() + " = " + grade_to_string(g) +
              " differs from its length " + std::to_string(x.size()));
  const auto h = x.size();
  auto res = free_resolution(Subquotient<F>::cyclic(ideal_power(J, static_cast<int>(n))), h + 1);
  require(res.complete && res.free_module(h + 1).rank() == 0, ErrorKind::kPrecondition,
          "resolution of R/J^n did not stop at length h");
  std::vector<FreeModule<F>> mods(res.complex.modules().begin(), res.complex.modules().begin() + h + 1);
  std::vector<ModuleMap<F>> maps(res.complex.differentials().begin(), res.complex.differentials().begin() + h);
  return ChainComplex<F>(std::move(mods), std::move(maps));
}

struct PerturbationTrial {
  std::size_t trial;
  bool persists;
  std::string certificate;
};

struct PerturbationReport {
  int q = 0;
  std::size_t trials = 0;
  std::size_t persisted = 0;
  std::vector<PerturbationTrial> records;
  double fraction() const { return trials ? static_cast<double>(persisted) / static_cast<double>(trials) : 0.0; }
};

/// Exactness certificate of 0 -> G_1 -> G_0 for a single map.
template <CoefficientField F>
ExactnessCertificate injectivity_certificate(const ModuleMap<F>& phi) {
  return buchsbaum_eisenbud_exact(ChainComplex<F>({phi.target, phi.source}, {phi}));
}

/// Whether phi + delta is still injective.
template <CoefficientField F>
ExactnessCertificate perturbation_persists(const ModuleMap<F>& phi, const Matrix<F>& delta) {
  require(delta.rows() == phi.matrix.rows() && delta.cols() == phi.matrix.cols(), ErrorKind::kInvalidArgument,
          "perturbation has the wrong shape");
  const auto& R = *phi.target.ring;
  auto m = phi.matrix;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = R.normal_form(m(i, j) + delta(i, j));
  return injectivity_certificate(ModuleMap<F>(phi.source, phi.target, m));
}

/// Random graded perturbations of an injective phi : G_1 -> G_0 by entries
/// in m^q: entry (i, j) gets a random form of degree deg_j - deg_i when that
/// degree is at least q, else stays put.
template <CoefficientField F>
PerturbationReport two_term_perturbation_test(const ModuleMap<F>& phi, int q, std::size_t trials,
                                              std::uint64_t seed) {
  require(q >= 0, ErrorKind::kInvalidArgument, "perturbation order must be nonnegative");
  auto base = injectivity_certificate(phi);
  require(base.exact, ErrorKind::kPrecondition, "perturbation test needs an injective map: " + base.summary());
  const auto& R = *phi.target.ring;
  std::mt19937_64 rng(seed);
  PerturbationReport rep;
  rep.q = q;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    auto delta = Matrix<F>::zero(R, phi.matrix.rows(), phi.matrix.cols());
    for (std::size_t j = 0; j < delta.cols(); ++j)
      for (std::size_t i = 0; i < delta.rows(); ++i) {
        std::int32_t e = phi.source.degrees[j] - phi.target.degrees[i];
        if (e >= q && e >= 0) delta(i, j) = R.random_form(e, rng);
      }
    auto cert = perturbation_persists(phi, delta);
    rep.records.push_back({t, cert.exact, cert.summary()});
    rep.persisted += cert.exact;
  }
  return rep;
}

struct FoundationReport {
  /// Hypotheses over the full range used by the argument, including j = 0.
  bool hypotheses_hold = true;
  /// Hypotheses over the printed range 1 <= j <= n-1 only.
  bool printed_hypotheses_hold = true;
  bool conclusion_holds = false;
  std::vector<std::string> hypothesis_failures;
  std::string detail;
};

/// For a complex M_• of length n and x = x_1..x_n with
///   (1) d_i killing H_{n-i}(M_•) for 0 <= i <= n-2, and
///   (2) d killing H_{n-j}(x; M_{j+1}) for 0 <= j <= n-1,
/// checks that D = d_0...d_{n-2} d^n kills Hom(R/(x), H_1(M_•)), realized as
/// (0 :_{H_1} (x)). Hypothesis (2) is also needed at j = 0 (for n = 1 the
/// statement is otherwise false: 0 -> R -x-> R over k[x]/(x^2) with d = 1);
/// the report records whether the range 1 <= j <= n-1 alone held.
/// Hypotheses are verified before the conclusion.
template <CoefficientField F>
FoundationReport foundation_homology_check(const PresentedComplex<F>& Mc, const std::vector<Polynomial<F>>& x,
                                           const std::vector<Polynomial<F>>& d_list, const Polynomial<F>& d) {
  const auto n = x.size();
  require(n >= 1, ErrorKind::kInvalidArgument, "foundation check needs a nonempty sequence");
  require(Mc.length() == n, ErrorKind::kInvalidArgument,
          "complex length " + std::to_string(Mc.length()) + " differs from the sequence length " + std::to_string(n));
  require(d_list.size() + 1 == n, ErrorKind::kInvalidArgument,
          "expected " + std::to_string(n - 1) + " elements d_0..d_{n-2}, got " + std::to_string(d_list.size()));
  const auto& R = Mc.ring();
  FoundationReport rep;
  for (std::size_t i = 0; i + 2 <= n; ++i)
    if (!kills(d_list[i], Mc.homology(n - i))) {
      rep.hypothesis_failures.push_back("d_" + std::to_string(i) + " does not kill H_" + std::to_string(n - i));
      rep.printed_hypotheses_hold = false;
    }
  for (std::size_t j = 0; j + 1 <= n; ++j) {
    auto Hx = koszul_homology(x, Mc.term(j + 1), n - j);
    if (!kills(d, Hx)) {
      rep.hypothesis_failures.push_back("d does not kill H_" + std::to_string(n - j) + "(x; M_" +
                                        std::to_string(j + 1) + ")");
      if (j >= 1) rep.printed_hypotheses_hold = false;
    }
  }
  rep.hypotheses_hold = rep.hypothesis_failures.empty();
  auto D = R.one();
  for (const auto& di : d_list) D = R.mul(D, di);
  for (std::size_t k = 0; k < n; ++k) D = R.mul(D, d);
  auto hom = zero_colon(Mc.homology(1), x);
  rep.conclusion_holds = kills(D, hom);
  if (!rep.hypotheses_hold)
    rep.detail = "hypothesis failure";
  else
    rep.detail = rep.conclusion_holds ? "D kills Hom(R/(x), H_1)" : "conclusion failure: D = " + to_string(D);
  return rep;
}

/// A ring plus a complex read from the fixture text format:
///
///   ring: x, y, z
///   quotient: x*y          (optional)
///   degrees: 0             (optional degrees of G_0, default all 0)
///   d1: x, y
///   d2: y; -x
///
/// Lines starting with '#' are comments. Differentials must be numbered
/// consecutively from d1.
template <CoefficientField F>
struct ComplexFixture {
  RingPtr<F> ring;
  ChainComplex<F> complex;
};

template <CoefficientField F>
ComplexFixture<F> parse_complex_fixture(const F& field, const std::string& text) {
  std::vector<std::string> vars, quotient;
  std::vector<std::int32_t> degrees;
  bool have_degrees = false;
  std::vector<std::pair<std::size_t, std::string>> mats;
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r");
    auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto split = [&](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
      if (c == ',') {
        auto t = trim(cur);
        if (!t.empty()) out.push_back(t);
        cur.clear();
      } else {
        cur += c;
      }
    }
    return out;
  };
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    require(colon != std::string::npos, ErrorKind::kParse, "fixture line " + std::to_string(lineno) + ": missing ':'");
    auto key = trim(line.substr(0, colon));
    auto val = trim(line.substr(colon + 1));
    if (key == "ring") {
      vars = split(val);
    } else if (key == "quotient") {
      quotient = split(val);
    } else if (key == "degrees") {
      have_degrees = true;
      for (const auto& t : split(val)) {
        try {
          degrees.push_back(std::stoi(t));
        } catch (const std::exception&) {
          fail(ErrorKind::kParse, "fixture line " + std::to_string(lineno) + ": bad degree '" + t + "'");
        }
      }
    } else if (key.size() >= 2 && key[0] == 'd' && key.find_first_not_of("0123456789", 1) == std::string::npos) {
      mats.emplace_back(std::stoul(key.substr(1)), val);
    } else {
      fail(ErrorKind::kParse, "fixture line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  require(!vars.empty(), ErrorKind::kParse, "fixture has no ring line");
  ComplexFixture<F> fx;
  fx.ring = make_quotient_ring(make_polynomial_ring(field, vars), quotient);
  std::vector<Matrix<F>> ms;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    require(mats[i].first == i + 1, ErrorKind::kParse, "fixture differentials must be numbered d1, d2, ...");
    ms.push_back(parse_matrix(*fx.ring, mats[i].second));
  }
  if (!have_degrees) degrees.assign(ms.empty() ? 1 : ms[0].rows(), 0);
  fx.complex = ChainComplex<F>::from_matrices(fx.ring, degrees, ms);
  return fx;
}

}  // namespace arw
