#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arw/core/error.hpp"

namespace arw::workbench {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {
      "ar-number", "syzygetic-sweep", "kas-find",      "kas-verify", "special-reduction", "resolve",
      "koszul",    "exactness",       "power-complex", "fromagt",    "perturb-test",      "bounds-table"};
  return names;
}

struct RingSpec {
  std::string field = "32003";  // a prime, or "QQ"
  std::vector<std::string> variables;
  std::vector<int> weights;  // empty: all 1
  std::vector<std::string> defining;
  bool operator==(const RingSpec&) const = default;
};

/// explicit: the listed ideals; monomial: antichains of monomials of degree
/// <= max_degree with <= max_gens generators (first `count`); random:
/// `count` seeded homogeneous ideals.
struct IdealFamilySpec {
  std::string kind = "explicit";
  std::vector<std::vector<std::string>> ideals;
  int count = 0;
  int max_gens = 2;
  int max_degree = 2;
  bool operator==(const IdealFamilySpec&) const = default;
};

/// quotient: R/I; syzygy: index-th syzygy of R/I; free: R^rank;
/// submodule / cokernel: of the matrix text (rows split by ';').
struct ModuleSpec {
  std::string kind = "free";
  std::vector<std::string> ideal;
  int index = 0;
  int rank = 1;
  std::string matrix;
  bool operator==(const ModuleSpec&) const = default;
};

/// syzygy: index-th syzygies of R/I; quotient: R/I; I over `ideals`.
struct ModuleFamilySpec {
  std::string kind = "syzygy";
  int index = 2;
  IdealFamilySpec ideals;
  bool operator==(const ModuleFamilySpec&) const = default;
};

struct Params {
  int n_max = 6;
  int i_min = 0;
  int i_max = 0;
  int jobs = 0;  // 0: available parallelism
  int degree_bound = 2;
  std::vector<int> t_list{1, 2};
  int t = 1;
  int t_cap = 16;
  int k_max = 4;
  int max_delta = 6;
  int length = 0;  // resolve: 0 means dim R + 2
  int sop_count = 2;
  bool calibrate = false;
  int j = 1;
  int i = 1;
  int n = 1;
  int power = 2;
  int q = 1;
  int trials = 10;
  std::vector<std::string> ideal;
  std::vector<std::string> sequence;
  std::vector<std::string> fixtures;
  std::string map;
  ModuleSpec module;
  IdealFamilySpec ideal_family;
  ModuleFamilySpec module_family;
  bool operator==(const Params&) const = default;
};

struct OutputSpec {
  std::string json = "report.json";
  std::string csv = "summary.csv";
  bool timing = false;  // wall-clock in the report breaks byte identity
  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  RingSpec ring;
  std::string task;
  Params params;
  std::uint64_t seed = 0;
  OutputSpec output;
  bool operator==(const ExperimentConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Reading with strict keys

namespace detail {

[[noreturn]] inline void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::kConfig, msg, path.empty() ? "config" : path);
}

class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_error(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void integer(const std::string& key, int& out, int lo, int hi) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer()) config_error(at(key), "expected an integer");
    auto x = v->get<std::int64_t>();
    if (x < lo || x > hi)
      config_error(at(key), "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    out = static_cast<int>(x);
  }
  void unsigned64(const std::string& key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return;
    if (v->is_number_unsigned()) {
      out = v->get<std::uint64_t>();
    } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
      out = static_cast<std::uint64_t>(v->get<std::int64_t>());
    } else {
      config_error(at(key), "expected a nonnegative integer");
    }
  }
  void boolean(const std::string& key, bool& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_boolean()) config_error(at(key), "expected true or false");
    out = v->get<bool>();
  }
  void string(const std::string& key, std::string& out, std::size_t max_len = 4096) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) config_error(at(key), "expected a string");
    out = v->get<std::string>();
    if (out.size() > max_len) config_error(at(key), "string longer than " + std::to_string(max_len));
  }
  void strings(const std::string& key, std::vector<std::string>& out, std::size_t max_n = 64) {
    const json* v = take(key);
    if (!v) return;
    out = read_strings(*v, at(key), max_n);
  }
  void integers(const std::string& key, std::vector<int>& out, int lo, int hi, std::size_t max_n = 64) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array() || v->size() > max_n)
      config_error(at(key), "expected an array of at most " + std::to_string(max_n) + " integers");
    out.clear();
    for (std::size_t k = 0; k < v->size(); ++k) {
      const auto& e = (*v)[k];
      const auto p = at(key) + "[" + std::to_string(k) + "]";
      if (!e.is_number_integer()) config_error(p, "expected an integer");
      auto x = e.get<std::int64_t>();
      if (x < lo || x > hi)
        config_error(p, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      out.push_back(static_cast<int>(x));
    }
  }
  void string_lists(const std::string& key, std::vector<std::vector<std::string>>& out, std::size_t max_n = 64) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array() || v->size() > max_n)
      config_error(at(key), "expected an array of at most " + std::to_string(max_n) + " string arrays");
    out.clear();
    for (std::size_t k = 0; k < v->size(); ++k)
      out.push_back(read_strings((*v)[k], at(key) + "[" + std::to_string(k) + "]", 64));
  }
  template <typename Fn>
  void object(const std::string& key, Fn&& fn) {
    const json* v = take(key);
    if (!v) return;
    ObjectReader sub(*v, at(key));
    fn(sub);
    sub.finish();
  }
  bool has(const std::string& key) const { return j_.contains(key); }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) config_error(at(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;

  const json* take(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    return &*it;
  }
  static std::vector<std::string> read_strings(const json& v, const std::string& path, std::size_t max_n) {
    if (!v.is_array() || v.size() > max_n)
      config_error(path, "expected an array of at most " + std::to_string(max_n) + " strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_string()) config_error(path + "[" + std::to_string(k) + "]", "expected a string");
      out.push_back(v[k].get<std::string>());
      if (out.back().size() > 4096) config_error(path + "[" + std::to_string(k) + "]", "string too long");
    }
    return out;
  }
};

inline void one_of(const std::string& path, const std::string& v, const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) return;
  std::string s;
  for (const auto& a : allowed) s += (s.empty() ? "" : ", ") + a;
  config_error(path, "'" + v + "' is not one of: " + s);
}

inline void read_ideal_family(ObjectReader& r, IdealFamilySpec& f) {
  r.string("kind", f.kind);
  one_of(r.at("kind"), f.kind, {"explicit", "monomial", "random"});
  r.string_lists("ideals", f.ideals);
  r.integer("count", f.count, 0, 64);
  r.integer("max_gens", f.max_gens, 1, 6);
  r.integer("max_degree", f.max_degree, 1, 6);
}

inline void read_module(ObjectReader& r, ModuleSpec& m) {
  r.string("kind", m.kind);
  one_of(r.at("kind"), m.kind, {"free", "quotient", "syzygy", "submodule", "cokernel"});
  r.strings("ideal", m.ideal);
  r.integer("index", m.index, 0, 6);
  r.integer("rank", m.rank, 1, 8);
  r.string("matrix", m.matrix);
}

inline void read_module_family(ObjectReader& r, ModuleFamilySpec& f) {
  r.string("kind", f.kind);
  one_of(r.at("kind"), f.kind, {"syzygy", "quotient"});
  r.integer("index", f.index, 0, 6);
  r.object("ideals", [&](ObjectReader& s) { read_ideal_family(s, f.ideals); });
}

inline void read_params(ObjectReader& r, Params& p) {
  r.integer("n_max", p.n_max, 1, 12);
  r.integer("i_min", p.i_min, 0, 8);
  r.integer("i_max", p.i_max, 0, 8);
  r.integer("jobs", p.jobs, 0, 64);
  r.integer("degree_bound", p.degree_bound, 0, 8);
  r.integers("t_list", p.t_list, 1, 16, 8);
  r.integer("t", p.t, 1, 64);
  r.integer("t_cap", p.t_cap, 1, 64);
  r.integer("k_max", p.k_max, 0, 10);
  r.integer("max_delta", p.max_delta, 1, 12);
  r.integer("length", p.length, 0, 8);
  r.integer("sop_count", p.sop_count, 1, 8);
  r.boolean("calibrate", p.calibrate);
  r.integer("j", p.j, 1, 8);
  r.integer("i", p.i, 1, 8);
  r.integer("n", p.n, 1, 6);
  r.integer("power", p.power, 1, 6);
  r.integer("q", p.q, 0, 6);
  r.integer("trials", p.trials, 0, 200);
  r.strings("ideal", p.ideal);
  r.strings("sequence", p.sequence);
  r.strings("fixtures", p.fixtures);
  r.string("map", p.map);
  r.object("module", [&](ObjectReader& s) { read_module(s, p.module); });
  r.object("ideal_family", [&](ObjectReader& s) { read_ideal_family(s, p.ideal_family); });
  r.object("module_family", [&](ObjectReader& s) { read_module_family(s, p.module_family); });
  if (p.i_min > p.i_max) config_error(r.at("i_max"), "i_max is smaller than i_min");
  if (p.t_list.empty()) config_error(r.at("t_list"), "t_list must not be empty");
}

}  // namespace detail

/// Parses and shape-checks a config document. Semantic checks that need a
/// ring (polynomial syntax, variable names) happen when tasks are prepared.
inline ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  detail::ObjectReader r(j, "");
  r.integer("schema_version", c.schema_version, 0, 1 << 20);
  if (c.schema_version != kSchemaVersion)
    detail::config_error("schema_version", "unsupported schema version " + std::to_string(c.schema_version));
  if (!r.has("ring")) detail::config_error("ring", "missing ring block");
  r.object("ring", [&](detail::ObjectReader& s) {
    s.string("field", c.ring.field, 32);
    s.strings("variables", c.ring.variables, 16);
    s.integers("weights", c.ring.weights, 1, 100, 16);
    s.strings("defining", c.ring.defining);
    if (c.ring.variables.empty()) detail::config_error(s.at("variables"), "at least one variable is required");
    if (!c.ring.weights.empty() && c.ring.weights.size() != c.ring.variables.size())
      detail::config_error(s.at("weights"), "needs one weight per variable");
  });
  if (!r.has("task")) detail::config_error("task", "missing task");
  r.string("task", c.task, 64);
  detail::one_of("task", c.task, task_names());
  r.object("params", [&](detail::ObjectReader& s) { detail::read_params(s, c.params); });
  r.unsigned64("seed", c.seed);
  r.object("output", [&](detail::ObjectReader& s) {
    s.string("json", c.output.json, 1024);
    s.string("csv", c.output.csv, 1024);
    s.boolean("timing", c.output.timing);
  });
  r.finish();
  return c;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, e.what(), "config");
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// Writing: every field, so parse(serialize(c)) == c

inline json to_json(const IdealFamilySpec& f) {
  return {{"kind", f.kind}, {"ideals", f.ideals}, {"count", f.count}, {"max_gens", f.max_gens},
          {"max_degree", f.max_degree}};
}
inline json to_json(const ModuleSpec& m) {
  return {{"kind", m.kind}, {"ideal", m.ideal}, {"index", m.index}, {"rank", m.rank}, {"matrix", m.matrix}};
}
inline json to_json(const ModuleFamilySpec& f) {
  return {{"kind", f.kind}, {"index", f.index}, {"ideals", to_json(f.ideals)}};
}
inline json to_json(const Params& p) {
  return {{"n_max", p.n_max},       {"i_min", p.i_min},
          {"i_max", p.i_max},       {"jobs", p.jobs},
          {"degree_bound", p.degree_bound},
          {"t_list", p.t_list},     {"t", p.t},
          {"t_cap", p.t_cap},       {"k_max", p.k_max},
          {"max_delta", p.max_delta},
          {"length", p.length},     {"sop_count", p.sop_count},
          {"calibrate", p.calibrate},
          {"j", p.j},               {"i", p.i},
          {"n", p.n},               {"power", p.power},
          {"q", p.q},               {"trials", p.trials},
          {"ideal", p.ideal},       {"sequence", p.sequence},
          {"fixtures", p.fixtures}, {"map", p.map},
          {"module", to_json(p.module)},
          {"ideal_family", to_json(p.ideal_family)},
          {"module_family", to_json(p.module_family)}};
}
inline json to_json(const ExperimentConfig& c) {
  return {{"schema_version", c.schema_version},
          {"ring",
           {{"field", c.ring.field},
            {"variables", c.ring.variables},
            {"weights", c.ring.weights},
            {"defining", c.ring.defining}}},
          {"task", c.task},
          {"params", to_json(c.params)},
          {"seed", c.seed},
          {"output", {{"json", c.output.json}, {"csv", c.output.csv}, {"timing", c.output.timing}}}};
}

/// Appends "(line N)" when the failing value can be found in the raw text.
inline std::string describe_error(const Error& e, const std::string& raw, const json& doc) {
  std::string where = e.location();
  std::string out = std::string(to_string(e.kind())) + " error";
  if (!where.empty()) {
    out += " at " + where;
    try {
      std::string ptr;
      std::string seg;
      for (char ch : where + ".") {
        if (ch == '.' || ch == '[') {
          if (!seg.empty()) ptr += "/" + seg;
          seg.clear();
        } else if (ch != ']') {
          seg += ch;
        }
      }
      const auto& v = doc.at(json::json_pointer(ptr));
      auto needle = v.dump();
      auto pos = raw.find(needle);
      if (pos != std::string::npos)
        out += " (line " + std::to_string(1 + std::count(raw.begin(), raw.begin() + static_cast<long>(pos), '\n')) + ")";
    } catch (const std::exception&) {
    }
  }
  return out + ": " + e.message();
}

inline std::string describe_error(const Error& e, const std::string& raw) {
  return describe_error(e, raw, json::parse(raw, nullptr, false));
}

}  // namespace arw::workbench
