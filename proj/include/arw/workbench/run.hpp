#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arw/kas/kas.hpp"
#include "arw/workbench/config.hpp"
#include "arw/workbench/seed.hpp"

namespace arw::workbench {

inline constexpr const char* kToolName = "arw-workbench";
inline constexpr const char* kToolVersion = "0.1.0";

/// One CSV row: case_id, module_desc, ideal_desc, i, n_max, h_weak,
/// h_strong, status.
struct CaseRow {
  std::string case_id;
  std::string module_desc;
  std::string ideal_desc;
  std::size_t i = 0;
  int n_max = 0;
  std::string h_weak;
  std::string h_strong;
  std::string status;
};

struct RunReport {
  ExperimentConfig config;
  json result = json::object();
  std::vector<CaseRow> cases;
  double seconds = 0;
};

namespace detail {

/// Rethrows library errors that carry no location under `where`.
template <typename Fn>
auto located(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.location().empty()) throw;
    throw Error(e.kind(), e.message(), where);
  }
}

inline json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

template <CoefficientField F>
json polys_json(const std::vector<Polynomial<F>>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

inline json ar_json(const ARResult& r) {
  return {{"id", r.id},
          {"n_max", r.n_max},
          {"h_weak", opt_json(r.h_weak)},
          {"h_strong", opt_json(r.h_strong)},
          {"status", r.status()},
          {"weak_exponent", r.weak_exponent},
          {"strong_from", r.strong_from}};
}

inline CaseRow ar_row(std::string id, std::string mdesc, std::string idesc, std::size_t i, const ARResult& r) {
  return {std::move(id), std::move(mdesc), std::move(idesc), i, r.n_max, h_to_string(r.h_weak),
          h_to_string(r.h_strong), r.status()};
}

template <CoefficientField F>
class TaskContext {
 public:
  TaskContext(const ExperimentConfig& cfg, F field) : cfg_(cfg) {
    const auto& rs = cfg.ring;
    auto S = located("ring.variables", [&] {
      return make_polynomial_ring(field, rs.variables, OrderKind::kGrevlex,
                                  std::vector<std::int32_t>(rs.weights.begin(), rs.weights.end()));
    });
    std::vector<Polynomial<F>> defs;
    for (std::size_t k = 0; k < rs.defining.size(); ++k) {
      const auto where = "ring.defining[" + std::to_string(k) + "]";
      defs.push_back(located(where, [&] { return parse_polynomial(*S, rs.defining[k]); }));
    }
    R_ = located("ring.defining", [&] { return make_quotient_ring(S, defs); });
  }

  const RingPtr<F>& ring() const { return R_; }
  const Params& params() const { return cfg_.params; }
  std::uint64_t seed(const std::string& label) const { return derive_seed(cfg_.seed, label); }

  std::vector<Polynomial<F>> polys(const std::vector<std::string>& s, const std::string& path) const {
    std::vector<Polynomial<F>> out;
    for (std::size_t k = 0; k < s.size(); ++k)
      out.push_back(located(path + "[" + std::to_string(k) + "]", [&] { return R_->parse(s[k]); }));
    return out;
  }

  Ideal<F> ideal(const std::vector<std::string>& s, const std::string& path) const {
    auto g = polys(s, path);
    return located(path, [&] {
      Ideal<F> I(R_, g);
      require(I.is_homogeneous(), ErrorKind::kNotHomogeneous, "ideal generators must be homogeneous");
      return I;
    });
  }

  Subquotient<F> module(const ModuleSpec& m, const std::string& path) const {
    return located(path, [&]() -> Subquotient<F> {
      if (m.kind == "free") {
        FreeModule<F> A(R_, static_cast<std::size_t>(m.rank));
        return Subquotient<F>::submodule(A, Matrix<F>::identity(*R_, A.rank()));
      }
      if (m.kind == "quotient" || m.kind == "syzygy") {
        auto I = ideal(m.ideal, path + ".ideal");
        auto C = Subquotient<F>::cyclic(I);
        return m.kind == "quotient" ? C : syzygy_module(C, static_cast<std::size_t>(m.index));
      }
      auto mat = located(path + ".matrix", [&] { return parse_matrix(*R_, m.matrix); });
      require(mat.rows() >= 1, ErrorKind::kConfig, "matrix needs at least one row");
      FreeModule<F> A(R_, mat.rows());
      if (m.kind == "submodule") {
        auto M = Subquotient<F>::submodule(A, mat);
        require(M.is_homogeneous(), ErrorKind::kNotHomogeneous, "matrix columns must be homogeneous");
        return M;
      }
      return cokernel(make_map(A, mat));
    });
  }

  std::vector<IdealCase<F>> ideal_family(const IdealFamilySpec& f, const std::string& path) const {
    if (f.kind == "explicit") {
      std::vector<IdealCase<F>> out;
      for (std::size_t k = 0; k < f.ideals.size(); ++k) {
        auto I = ideal(f.ideals[k], path + ".ideals[" + std::to_string(k) + "]");
        out.push_back({ideal_desc(I), I});
      }
      return out;
    }
    return located(path, [&] {
      if (f.kind == "monomial")
        return monomial_ideal_family(R_, f.max_degree, static_cast<std::size_t>(f.max_gens),
                                     static_cast<std::size_t>(f.count));
      return random_ideal_family(R_, static_cast<std::size_t>(f.count), static_cast<std::size_t>(f.max_gens),
                                 f.max_degree, seed(path));
    });
  }

  std::vector<ModuleCase<F>> module_family(const ModuleFamilySpec& f, const std::string& path) const {
    auto ideals = ideal_family(f.ideals, path + ".ideals");
    return located(path, [&] {
      if (f.kind == "quotient") return quotient_family(ideals);
      return syzygy_family(ideals, static_cast<std::size_t>(f.index));
    });
  }

  static std::string family_desc(const IdealFamilySpec& f) {
    if (f.kind == "explicit") return "explicit(" + std::to_string(f.ideals.size()) + ")";
    return f.kind + "(count=" + std::to_string(f.count) + ", max_gens=" + std::to_string(f.max_gens) +
           ", max_degree=" + std::to_string(f.max_degree) + ")";
  }
  static std::string family_desc(const ModuleFamilySpec& f) {
    return (f.kind == "syzygy" ? "syz_" + std::to_string(f.index) : std::string("quotient")) + " of " +
           family_desc(f.ideals);
  }

  KASCandidate<F> candidate() const {
    return located("params.degree_bound",
                   [&] { return kas_candidate(R_, seed("kas-candidate"), params().degree_bound); });
  }

 private:
  const ExperimentConfig& cfg_;
  RingPtr<F> R_;
};

template <CoefficientField F>
json candidate_json(const KASCandidate<F>& c) {
  json a = json::array(), b = json::array();
  for (const auto& I : c.annihilators.a) a.push_back(I.describe());
  for (const auto& I : c.annihilators.b) b.push_back(I.describe());
  auto recheck = recheck_candidate(c);
  return {{"ring", c.ring->describe()},
          {"hash", c.content_hash()},
          {"base", polys_json(c.base)},
          {"elements", polys_json(c.elements())},
          {"exponent", c.exponent},
          {"prescribed_exponent", c.prescribed_exponent},
          {"empirical_exponent", opt_json(c.empirical_exponent)},
          {"certificates",
           {{"membership", c.membership},
            {"tail_dims", c.tail_dims},
            {"double_annihilator_dims", c.double_ann_dims},
            {"draws", c.draws},
            {"recheck_ok", recheck.ok},
            {"recheck_failures", recheck.failures}}},
          {"annihilators",
           {{"a", a},
            {"b", b},
            {"b_dims", c.annihilators.b_dims},
            {"chain_descending", c.annihilators.chain_descending},
            {"dims_ok", c.annihilators.dims_ok}}}};
}

inline json well_suited_json(const WellSuitedReport& w) {
  return {{"ok", w.ok}, {"checked", w.checked}, {"failures", w.failures}};
}

// ---------------------------------------------------------------------------
// Tasks

template <CoefficientField F>
void task_bounds_table(const TaskContext<F>& ctx, RunReport& rep) {
  BoundFunctionTable T;
  json rows = json::array();
  bool rec = true, le = true;
  for (const auto& b : T.table(ctx.params().max_delta)) {
    rows.push_back({{"delta", b.delta},
                    {"nu", b.nu},
                    {"tau", b.tau},
                    {"E", b.e},
                    {"E1", b.e1},
                    {"E_recursion_ok", b.e_recursion_ok},
                    {"E1_recursion_ok", b.e1_recursion_ok},
                    {"E1_le_E", b.e1_le_e}});
    rec = rec && b.e_recursion_ok && b.e1_recursion_ok;
    le = le && b.e1_le_e;
  }
  rep.result = {{"max_delta", ctx.params().max_delta},
                {"rows", rows},
                {"recursions_hold", rec},
                {"E1_le_E_everywhere", le}};
}

template <CoefficientField F>
void task_ar_number(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto A = ctx.module(p.module, "params.module");
  auto I = ctx.ideal(p.ideal, "params.ideal");
  auto r = located("params.module", [&] { return artin_rees_number(A, I, p.n_max, "case 0"); });
  rep.result = ar_json(r);
  rep.result["module"] = A.describe();
  rep.result["ideal"] = ideal_desc(I);
  rep.cases.push_back(ar_row("0", A.describe(), ideal_desc(I), 0, r));
}

template <CoefficientField F>
void task_sweep(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto mods = ctx.module_family(p.module_family, "params.module_family");
  auto ideals = ctx.ideal_family(p.ideal_family, "params.ideal_family");
  SweepOptions opt;
  opt.i_min = static_cast<std::size_t>(p.i_min);
  opt.i_max = static_cast<std::size_t>(p.i_max);
  opt.n_max = p.n_max;
  opt.jobs = p.jobs > 0 ? static_cast<std::size_t>(p.jobs) : std::max(1u, std::thread::hardware_concurrency());
  opt.seed = ctx.seed("syzygetic-sweep");
  opt.module_family = TaskContext<F>::family_desc(p.module_family);
  opt.ideal_family = TaskContext<F>::family_desc(p.ideal_family);
  auto sw = located("params", [&] { return uniform_sweep(mods, ideals, opt); });
  json recs = json::array();
  std::size_t errors = 0;
  for (const auto& r : sw.records) {
    json j = ar_json(r.result);
    j["case_id"] = r.case_id;
    j["i"] = r.i;
    j["module"] = r.module_desc;
    j["ideal"] = r.ideal_desc;
    if (!r.error.empty()) {
      j["error"] = r.error;
      ++errors;
      rep.cases.push_back({std::to_string(r.case_id), r.module_desc, r.ideal_desc, r.i, p.n_max, "", "", "error"});
    } else {
      rep.cases.push_back(ar_row(std::to_string(r.case_id), r.module_desc, r.ideal_desc, r.i, r.result));
    }
    recs.push_back(std::move(j));
  }
  rep.result = {{"module_family", sw.module_family},
                {"ideal_family", sw.ideal_family},
                {"modules", mods.size()},
                {"ideals", ideals.size()},
                {"i_min", sw.i_min},
                {"i_max", sw.i_max},
                {"n_max", sw.n_max},
                {"max_h", opt_json(sw.max_h)},
                {"max_h_strong", opt_json(sw.max_h_strong)},
                {"max_h_scope", sw.scope()},
                {"errors", errors},
                {"records", recs}};
}

template <CoefficientField F>
void task_kas_find(const TaskContext<F>& ctx, RunReport& rep) {
  rep.result = {{"candidate", candidate_json(ctx.candidate())}};
}

template <CoefficientField F>
void task_kas_verify(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto c = ctx.candidate();
  auto mods = ctx.module_family(p.module_family, "params.module_family");
  auto sops = located("params.sop_count", [&] {
    return random_sop_family(c, static_cast<std::size_t>(p.sop_count), ctx.seed("kas-verify/sops"));
  });
  json calib = nullptr;
  if (p.calibrate) calib = opt_json(calibrate_exponent(c, mods, sops, p.t_list, p.n_max));
  auto r = kas_verify(c, mods, sops, p.t_list, p.n_max);
  json checks = json::array(), skipped = json::array(), mdesc = json::array(), sj = json::array();
  for (const auto& ch : r.checks)
    checks.push_back({{"module", ch.module}, {"sop", ch.sop}, {"k", ch.k}, {"j", ch.j}, {"v", ch.v},
                      {"n", ch.n}, {"t", ch.t}, {"pass", ch.pass}});
  for (const auto& s : r.skipped)
    skipped.push_back({{"module", s.module}, {"sop", s.sop}, {"k", s.k}, {"reason", s.reason}});
  for (const auto& m : mods) mdesc.push_back(m.desc);
  for (const auto& x : sops) sj.push_back(polys_json(x));
  rep.result = {{"candidate", candidate_json(c)},
                {"candidate_hash", r.candidate_hash},
                {"exponent", r.exponent},
                {"calibrated_exponent", calib},
                {"modules", mdesc},
                {"sops", sj},
                {"t_list", r.t_list},
                {"n_max", r.n_max},
                {"checks", checks},
                {"skipped", skipped},
                {"failures", r.failures},
                {"passed", r.passed()},
                {"scope", r.scope()}};
}

template <CoefficientField F>
void task_special_reduction(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto c = ctx.candidate();
  auto I = ctx.ideal(p.ideal, "params.ideal");
  auto s = located("params.ideal", [&] { return special_reduction(I, c, ctx.seed("special-reduction"), p.k_max); });
  json certs = json::array();
  for (const auto& x : s.certificates)
    certs.push_back({{"i", x.i}, {"condition", x.condition}, {"k", opt_json(x.k)}, {"trivial", x.trivial}});
  rep.result = {{"candidate", candidate_json(c)},
                {"ideal", ideal_desc(I)},
                {"x", polys_json(s.x)},
                {"well_suited", well_suited_json(s.well_suited)},
                {"reduction_number_in_I", opt_json(s.reduction_of_I)},
                {"certificates", certs},
                {"attempts", s.attempts},
                {"k_max", p.k_max}};
}

template <CoefficientField F>
void task_resolve(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto M = ctx.module(p.module, "params.module");
  auto len = p.length > 0 ? static_cast<std::size_t>(p.length)
                          : static_cast<std::size_t>(std::max(0, ctx.ring()->dimension())) + 2;
  auto res = located("params.module", [&] { return free_resolution(M, len); });
  json graded = json::object();
  for (const auto& [d, row] : res.graded_betti()) graded[std::to_string(d)] = row;
  rep.result = {{"module", M.describe()},
                {"betti", res.betti()},
                {"graded_betti", graded},
                {"betti_csv", res.betti_csv()},
                {"length", res.length_computed},
                {"minimal", res.minimal},
                {"complete", res.complete}};
}

template <CoefficientField F>
void task_koszul(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  auto seq = ctx.polys(p.sequence, "params.sequence");
  auto M = ctx.module(p.module, "params.module");
  auto H = located("params.sequence", [&] { return tensor_with_module(koszul_complex(ctx.ring(), seq), M); });
  json hs = json::array();
  bool acyclic = true;
  for (std::size_t i = 0; i < H.size(); ++i) {
    auto s = H[i].hilbert_series();
    hs.push_back({{"i", i}, {"zero", s.is_zero()}, {"dimension", s.is_zero() ? -1 : s.dimension()},
                  {"length", s.length()}});
    if (i >= 1) acyclic = acyclic && s.is_zero();
  }
  rep.result = {{"sequence", polys_json(seq)}, {"module", M.describe()}, {"homology", hs}, {"acyclic", acyclic}};
}

template <CoefficientField F>
void task_exactness(const TaskContext<F>& ctx, RunReport& rep, const F& field) {
  const auto& p = ctx.params();
  json out = json::array();
  std::size_t agree = 0;
  for (std::size_t k = 0; k < p.fixtures.size(); ++k) {
    const auto where = "params.fixtures[" + std::to_string(k) + "]";
    auto fx = located(where, [&] { return parse_complex_fixture(field, p.fixtures[k]); });
    auto cert = located(where, [&] { return buchsbaum_eisenbud_exact(fx.complex); });
    bool acyc = located(where, [&] { return is_acyclic(fx.complex); });
    agree += cert.exact == acyc;
    out.push_back({{"index", k},
                   {"complex", fx.complex.describe()},
                   {"buchsbaum_eisenbud", cert.summary()},
                   {"be_exact", cert.exact},
                   {"homology_vanishes", acyc},
                   {"agree", cert.exact == acyc}});
  }
  rep.result = {{"fixtures", out}, {"agreements", agree}, {"total", p.fixtures.size()}};
}

template <CoefficientField F>
void task_power_complex(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  const auto& R = ctx.ring();
  auto seq = ctx.polys(p.sequence, "params.sequence");
  auto G = located("params.sequence", [&] { return power_complex(R, seq, static_cast<std::size_t>(p.power)); });
  auto Jn = ideal_power(Ideal<F>(R, seq), p.power);
  auto n = static_cast<std::size_t>(p.power);
  auto banded = determinantal_ideal(R, banded_matrix(*R, seq, n), n);
  json pres = nullptr;
  if (G.length() >= 2) {
    const auto& d2 = G.differential(2).matrix;
    auto r = matrix_rank(*R, d2);
    auto I = determinantal_ideal(R, d2, r);
    pres = {{"rank", r}, {"minors_equal_power", I.contains(Jn) && Jn.contains(I)}};
  }
  auto cert = buchsbaum_eisenbud_exact(G);
  rep.result = {{"sequence", polys_json(seq)},
                {"power", p.power},
                {"ranks", G.ranks()},
                {"complex", G.describe()},
                {"exactness", cert.summary()},
                {"banded_minors_equal_power", banded.contains(Jn) && Jn.contains(banded)},
                {"presentation", pres}};
}

template <CoefficientField F>
void task_fromagt(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  const auto& R = ctx.ring();
  auto c = ctx.candidate();
  const int d = static_cast<int>(c.dim());
  auto M = ctx.module(p.module, "params.module");
  std::vector<Polynomial<F>> x;
  if (!p.sequence.empty()) {
    x = ctx.polys(p.sequence, "params.sequence");
  } else {
    x = located("params", [&] {
      return special_reduction(Ideal<F>::maximal(R), c, ctx.seed("fromagt/x"), p.k_max).x;
    });
  }
  require(static_cast<int>(x.size()) == d, ErrorKind::kConfig, "sequence length must equal dim R");
  json items = json::array();
  std::size_t total = 0, failures = 0;
  bool well_suited = true;
  const int i_hi = std::min(p.i, d);
  for (int j = std::min(p.j, i_hi); j <= i_hi; ++j)
    for (int i = j; i <= i_hi; ++i)
      for (int n = 1; n <= p.n; ++n) {
        // every exponent tuple over t_list for c_{j+1}..c_i
        std::vector<std::size_t> idx(static_cast<std::size_t>(i - j), 0);
        while (true) {
          std::vector<int> exps;
          for (auto k : idx) exps.push_back(p.t_list[k]);
          auto r = located("params", [&] { return fromagt_checks(c, x, M, j, i, n, exps, p.t); });
          well_suited = well_suited && r.well_suited;
          for (const auto& it : r.items) {
            ++total;
            failures += !it.pass;
            items.push_back({{"item", it.item}, {"k", it.k}, {"j", j}, {"i", i}, {"n", n}, {"exponents", exps},
                             {"pass", it.pass}});
          }
          std::size_t pos = 0;
          while (pos < idx.size() && ++idx[pos] == p.t_list.size()) idx[pos++] = 0;
          if (pos == idx.size()) break;
        }
      }
  rep.result = {{"candidate", candidate_json(c)},
                {"module", M.describe()},
                {"x", polys_json(x)},
                {"well_suited", well_suited},
                {"t", p.t},
                {"items", items},
                {"total", total},
                {"failures", failures}};
}

template <CoefficientField F>
void task_perturb(const TaskContext<F>& ctx, RunReport& rep) {
  const auto& p = ctx.params();
  const auto& R = ctx.ring();
  auto mat = located("params.map", [&] { return parse_matrix(*R, p.map); });
  require(mat.rows() >= 1, ErrorKind::kConfig, "params.map needs at least one row");
  auto phi = located("params.map", [&] { return make_map(FreeModule<F>(R, mat.rows()), mat); });
  auto r = located("params.map", [&] {
    return two_term_perturbation_test(phi, p.q, static_cast<std::size_t>(p.trials), ctx.seed("perturb-test"));
  });
  json recs = json::array();
  for (const auto& t : r.records)
    recs.push_back({{"trial", t.trial}, {"persists", t.persists}, {"certificate", t.certificate}});
  rep.result = {{"q", r.q}, {"trials", r.trials}, {"persisted", r.persisted}, {"records", recs}};
}

template <CoefficientField F>
void dispatch(const ExperimentConfig& cfg, const F& field, RunReport& rep) {
  TaskContext<F> ctx(cfg, field);
  const auto& t = cfg.task;
  if (t == "bounds-table") return task_bounds_table(ctx, rep);
  if (t == "ar-number") return task_ar_number(ctx, rep);
  if (t == "syzygetic-sweep") return task_sweep(ctx, rep);
  if (t == "kas-find") return task_kas_find(ctx, rep);
  if (t == "kas-verify") return task_kas_verify(ctx, rep);
  if (t == "special-reduction") return task_special_reduction(ctx, rep);
  if (t == "resolve") return task_resolve(ctx, rep);
  if (t == "koszul") return task_koszul(ctx, rep);
  if (t == "exactness") return task_exactness(ctx, rep, field);
  if (t == "power-complex") return task_power_complex(ctx, rep);
  if (t == "fromagt") return task_fromagt(ctx, rep);
  if (t == "perturb-test") return task_perturb(ctx, rep);
  throw Error(ErrorKind::kConfig, "unknown task '" + t + "'", "task");
}

inline std::uint32_t parse_prime(const std::string& s) {
  if (s.empty() || s.size() > 10 || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::kConfig, "field must be a prime or \"QQ\", got '" + s + "'", "ring.field");
  auto v = std::stoull(s);
  if (v < 2 || v >= (1ull << 31) || !is_prime(v))
    throw Error(ErrorKind::kConfig, s + " is not a prime below 2^31", "ring.field");
  return static_cast<std::uint32_t>(v);
}

template <typename Fn>
void with_field(const std::string& name, Fn&& fn) {
  if (name == "QQ") return fn(RationalField());
  return fn(PrimeField(parse_prime(name)));
}

}  // namespace detail

/// Builds the ring and every task input without running the task.
inline void validate(const ExperimentConfig& cfg) {
  detail::with_field(cfg.ring.field, [&](auto field) {
    using F = decltype(field);
    detail::TaskContext<F> ctx(cfg, field);
    const auto& p = cfg.params;
    const auto& t = cfg.task;
    if (t == "ar-number" || t == "resolve" || t == "koszul" || t == "fromagt") ctx.module(p.module, "params.module");
    if (t == "ar-number" || t == "special-reduction") ctx.ideal(p.ideal, "params.ideal");
    if (t == "koszul" || t == "power-complex" || (t == "fromagt" && !p.sequence.empty()))
      ctx.polys(p.sequence, "params.sequence");
    if (t == "syzygetic-sweep" || t == "kas-verify") {
      if (p.module_family.ideals.kind == "explicit")
        ctx.ideal_family(p.module_family.ideals, "params.module_family.ideals");
    }
    if (t == "syzygetic-sweep" && p.ideal_family.kind == "explicit")
      ctx.ideal_family(p.ideal_family, "params.ideal_family");
    if (t == "perturb-test") detail::located("params.map", [&] { return parse_matrix(*ctx.ring(), p.map); });
    if (t == "exactness")
      for (std::size_t k = 0; k < p.fixtures.size(); ++k)
        detail::located("params.fixtures[" + std::to_string(k) + "]",
                        [&] { return parse_complex_fixture(field, p.fixtures[k]); });
  });
}

inline RunReport run(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  detail::with_field(cfg.ring.field, [&](auto field) { detail::dispatch(cfg, field, rep); });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Emission

inline json case_json(const CaseRow& r) {
  return {{"case_id", r.case_id},   {"module_desc", r.module_desc}, {"ideal_desc", r.ideal_desc},
          {"i", r.i},               {"n_max", r.n_max},             {"h_weak", r.h_weak},
          {"h_strong", r.h_strong}, {"status", r.status}};
}

/// Canonical JSON: keys sorted (nlohmann objects are ordered maps), two
/// space indent, trailing newline. Wall-clock only when requested.
inline std::string report_json(const RunReport& rep) {
  json cases = json::array();
  for (const auto& c : rep.cases) cases.push_back(case_json(c));
  json doc = {{"schema_version", kSchemaVersion},
              {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"config", to_json(rep.config)},
              {"task", rep.config.task},
              {"result", rep.result},
              {"cases", cases}};
  if (rep.config.output.timing) doc["timing"] = {{"seconds", rep.seconds}};
  return doc.dump(2) + "\n";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string report_csv(const RunReport& rep) {
  std::ostringstream os;
  os << "case_id,module_desc,ideal_desc,i,n_max,h_weak,h_strong,status\n";
  for (const auto& c : rep.cases)
    os << csv_field(c.case_id) << ',' << csv_field(c.module_desc) << ',' << csv_field(c.ideal_desc) << ',' << c.i
       << ',' << c.n_max << ',' << c.h_weak << ',' << c.h_strong << ',' << c.status << '\n';
  return os.str();
}

/// Writes the JSON report and, when a csv name is configured, the CSV
/// summary into `dir`. Returns the paths written.
inline std::vector<std::string> emit_report(const RunReport& rep, const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& body) {
    fs::path path = dir.empty() ? fs::path(name) : fs::path(dir) / name;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string(), "output");
    out << body;
    if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string(), "output");
    written.push_back(path.string());
  };
  if (!rep.config.output.json.empty()) write(rep.config.output.json, report_json(rep));
  if (!rep.config.output.csv.empty()) write(rep.config.output.csv, report_csv(rep));
  return written;
}

}  // namespace arw::workbench
