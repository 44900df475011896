#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "propmet/bridge.hpp"
#include "propmet/koszul.hpp"
#include "propmet/scenarios.hpp"
#include "propmet/stick.hpp"
#include "propmet/verify.hpp"

namespace propmet {

using Json = nlohmann::json;

inline constexpr const char* kConfigSchema = "propmet-config/1";
inline constexpr const char* kReportSchema = "propmet-report/1";
inline constexpr const char* kWitnessVerdict = "proper-invariant-metric-witness";

/// Pipeline inputs. Every field has a default; unset optionals fall back to
/// the scenario's own choice.
struct ScenarioConfig {
  std::string scenario = "z-line";
  std::optional<std::vector<std::string>> fundamental_set;
  /// "discrete", "table" or "d_f" (discrete + |f(x) - f(y)| with f linear in coordinates).
  std::optional<std::string> base_metric;
  std::vector<Rational> d_f_coefficients;
  std::optional<std::vector<std::vector<Rational>>> table;
  std::optional<std::size_t> window;
  std::vector<Rational> radii{1, 2, 4, 8};
  std::size_t samples = 1000;
  std::size_t budget = 1'000'000;
  std::uint64_t seed = 1;
  /// "auto" averages only a non-invariant base; "always" and "never" force the choice.
  std::string koszul = "auto";
  std::size_t bridge_cap = 16;
  /// Debug hook: multiplies every bridge length (negative control only).
  Rational bridge_weight_scale = 1;
  std::vector<std::pair<std::string, std::string>> probes;
  bool metric_table = false;
};

inline std::vector<std::string> rational_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Json to_json(const ScenarioConfig& c) {
  Json j;
  j["schema"] = kConfigSchema;
  j["scenario"] = c.scenario;
  if (c.fundamental_set) j["fundamental_set"] = *c.fundamental_set;
  if (c.base_metric) j["base_metric"] = *c.base_metric;
  if (!c.d_f_coefficients.empty()) j["d_f_coefficients"] = rational_strings(c.d_f_coefficients);
  if (c.table) {
    Json rows = Json::array();
    for (const auto& row : *c.table) rows.push_back(rational_strings(row));
    j["table"] = rows;
  }
  if (c.window) j["window"] = *c.window;
  j["radii"] = rational_strings(c.radii);
  j["samples"] = c.samples;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["koszul"] = c.koszul;
  j["bridge_cap"] = c.bridge_cap;
  j["bridge_weight_scale"] = to_string(c.bridge_weight_scale);
  Json probes = Json::array();
  for (const auto& [x, y] : c.probes) probes.push_back({x, y});
  j["probes"] = probes;
  j["metric_table"] = c.metric_table;
  return j;
}

namespace detail {

inline Rational json_rational(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw UsageError("config field '" + field + "' expects integers or rational strings");
}

inline std::vector<Rational> json_rationals(const Json& v, const std::string& field) {
  if (!v.is_array()) throw UsageError("config field '" + field + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(json_rational(e, field));
  return out;
}

}  // namespace detail

/// Parses a config document; unknown fields and a wrong schema are rejected.
inline ScenarioConfig parse_config(const Json& j) {
  static const std::set<std::string> known{
      "schema",      "scenario", "fundamental_set", "base_metric", "d_f_coefficients",    "table",
      "window",      "radii",    "samples",         "budget",      "seed",                "koszul",
      "bridge_cap",  "bridge_weight_scale", "probes", "metric_table"};
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown config field '" + key + "'");
  }
  if (!j.contains("schema") || j.at("schema") != kConfigSchema) {
    throw UsageError(std::string("config schema must be '") + kConfigSchema + "'");
  }
  ScenarioConfig c;
  try {
    if (j.contains("scenario")) c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("fundamental_set")) c.fundamental_set = j.at("fundamental_set").get<std::vector<std::string>>();
    if (j.contains("base_metric")) c.base_metric = j.at("base_metric").get<std::string>();
    if (j.contains("d_f_coefficients")) c.d_f_coefficients = detail::json_rationals(j.at("d_f_coefficients"), "d_f_coefficients");
    if (j.contains("table")) {
      std::vector<std::vector<Rational>> rows;
      for (const auto& row : j.at("table")) rows.push_back(detail::json_rationals(row, "table"));
      c.table = std::move(rows);
    }
    if (j.contains("window")) c.window = j.at("window").get<std::size_t>();
    if (j.contains("radii")) c.radii = detail::json_rationals(j.at("radii"), "radii");
    if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
    if (j.contains("budget")) c.budget = j.at("budget").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("koszul")) c.koszul = j.at("koszul").get<std::string>();
    if (j.contains("bridge_cap")) c.bridge_cap = j.at("bridge_cap").get<std::size_t>();
    if (j.contains("bridge_weight_scale")) {
      c.bridge_weight_scale = detail::json_rational(j.at("bridge_weight_scale"), "bridge_weight_scale");
    }
    if (j.contains("probes")) {
      for (const auto& p : j.at("probes")) {
        const auto pair = p.get<std::vector<std::string>>();
        if (pair.size() != 2) throw UsageError("each probe must be a pair of points");
        c.probes.emplace_back(pair[0], pair[1]);
      }
    }
    if (j.contains("metric_table")) c.metric_table = j.at("metric_table").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (c.koszul != "auto" && c.koszul != "always" && c.koszul != "never") {
    throw UsageError("koszul must be auto, always or never");
  }
  for (const auto& r : c.radii) {
    if (r <= 0) throw UsageError("ball radii must be positive");
  }
  if (c.bridge_weight_scale <= 0) throw UsageError("bridge_weight_scale must be positive");
  if (c.bridge_cap == 0) throw UsageError("bridge_cap must be positive");
  return c;
}

/// Everything the pipeline built, for the CLI exporters and for tests.
struct PipelineResult {
  Json report;
  bool witness = false;
  bool all_checks_pass = false;
  Scenario scenario;
  PointSet window;
  std::optional<FundamentalSet> fundamental;
  std::optional<Pseudometric> base, invariant_base, augmented, stick, bridge, final_metric;
  std::shared_ptr<const StickGraph> sticks;
  std::shared_ptr<const BridgeAtlas> atlas;
  std::optional<IslandPartition> island_partition;
};

namespace detail {

enum class Status { pass, fail, inconclusive };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Collects checks for one step and their aggregate status.
class StepRecorder {
 public:
  explicit StepRecorder(std::string name) { doc_["step"] = std::move(name); }

  Status check(const std::string& property, Status s, Json detail = Json::object()) {
    Json c;
    c["property"] = property;
    c["status"] = status_name(s);
    if (!detail.empty()) c["detail"] = std::move(detail);
    checks_.push_back(std::move(c));
    if (s == Status::fail) status_ = Status::fail;
    if (s == Status::inconclusive && status_ == Status::pass) status_ = Status::inconclusive;
    return s;
  }
  Status check(const std::string& property, bool pass, Json detail = Json::object()) {
    return check(property, pass ? Status::pass : Status::fail, std::move(detail));
  }

  Json& data() { return doc_; }
  Status status() const { return status_; }

  Json finish() {
    doc_["checks"] = checks_;
    doc_["status"] = status_name(status_);
    return doc_;
  }

 private:
  Json doc_;
  Json checks_ = Json::array();
  Status status_ = Status::pass;
};

/// All unordered pairs when there are at most `count`; otherwise `count` seeded random ones.
inline std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n, std::size_t count,
                                                                     std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n < 2) return out;
  if (n * (n - 1) / 2 <= count) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (out.size() < count) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    out.emplace_back(std::min(i, j), std::max(i, j));
  }
  return out;
}

/// Up to `count` window points: F first, then seeded picks.
inline PointSet sample_sources(const PointSet& window, const PointSet& fundamental, std::size_t count,
                               std::uint64_t seed) {
  PointSet out;
  for (const auto& f : fundamental) {
    if (out.size() < count) out.push_back(f);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, window.size() - 1);
  for (std::size_t tries = 0; out.size() < count && tries < 16 * count; ++tries) {
    const Point& p = window[pick(rng)];
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

inline Json pair_json(const Action& a, const Point& x, const Point& y) { return Json::array({a.format(x), a.format(y)}); }

inline Json point_list(const Action& a, const PointSet& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(a.format(p));
  return out;
}

inline Json invariance_json(const Action& a, const InvarianceReport& r) {
  Json j;
  j["pairs_checked"] = r.pairs_checked;
  if (!r.pass) {
    j["map"] = r.map_label;
    j["witness"] = pair_json(a, *r.x, *r.y);
    j["before"] = r.before.str();
    j["after"] = r.after.str();
  }
  return j;
}

inline Json axioms_json(const Action& a, const AxiomReport& r) {
  Json j;
  j["triples_checked"] = r.triples_checked;
  if (!r.pass) {
    j["violation"] = r.violation;
    j["witness"] = point_list(a, r.witness);
  }
  return j;
}

/// Positive on distinct window pairs.
inline std::optional<std::pair<Point, Point>> first_zero_pair(const DistanceTable& t) {
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    for (std::size_t j = i + 1; j < t.points.size(); ++j) {
      if (t.values[i][j] == ExtReal(0)) return std::make_pair(t.points[i], t.points[j]);
    }
  }
  return std::nullopt;
}

inline std::optional<std::pair<Point, Point>> first_infinite_pair(const DistanceTable& t) {
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    for (std::size_t j = i + 1; j < t.points.size(); ++j) {
      if (t.values[i][j].is_infinite()) return std::make_pair(t.points[i], t.points[j]);
    }
  }
  return std::nullopt;
}

inline Pseudometric make_base(const Scenario& s, const ScenarioConfig& c) {
  const std::string kind = c.base_metric.value_or(s.base);
  if (kind == "discrete") return discrete_metric(s.action);
  if (kind == "table") {
    auto table = c.table ? *c.table : s.table;
    if (table.empty()) throw UsageError("scenario '" + s.id + "' has no distance table");
    if (!s.action->all_points() || s.action->all_points()->size() != table.size()) {
      throw UsageError("distance table size does not match the space");
    }
    return table_metric(std::move(table), "table");
  }
  if (kind == "d_f") {
    auto coeffs = c.d_f_coefficients;
    auto f = [coeffs](const Point& x) {
      const auto* p = std::get_if<LatticePoint>(&x);
      if (!p || p->coords.size() != coeffs.size()) {
        throw UsageError("d_f base needs lattice points and one coefficient per coordinate");
      }
      Rational v = 0;
      for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * Rational(p->coords[i]);
      return v;
    };
    auto d = combine(CombineOp::sum, {discrete_metric(s.action), d_f(f, "linear")});
    d.separation = Rational(1);
    return d;
  }
  throw UsageError("unknown base metric '" + kind + "'");
}

inline Point parse_point(const Action& a, const std::string& text) { return a.parse(text); }

inline std::vector<Rational> sorted_radii(std::vector<Rational> r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace detail

/// Runs construction and verification end to end. With `full_suite`, the
/// averaged metric is also built and checked when the pipeline forwards an
/// already invariant base.
inline PipelineResult run_pipeline(const ScenarioConfig& config, bool full_suite = false) {
  using detail::Status;
  using detail::StepRecorder;

  PipelineResult out;
  out.scenario = make_scenario(config.scenario);
  const Scenario& sc = out.scenario;
  const auto action = sc.action;
  const Action& act = *action;
  const auto radii = detail::sorted_radii(config.radii);
  const auto maps = generator_maps(act, act.group().symmetric_generators());
  const std::optional<Sampling> triple_sampling =
      std::nullopt;  // windows of built-in scenarios are small enough for full scans

  Json& report = out.report;
  report["schema"] = kReportSchema;
  report["mode"] = full_suite ? "verify" : "run";
  report["scenario"] = {{"id", sc.id}, {"description", sc.description}, {"space", act.space_name()}};
  report["config"] = to_json(config);
  report["seed"] = config.seed;
  Json steps = Json::array();
  bool ok = true;

  auto finish = [&](bool witness) {
    report["steps"] = steps;
    out.witness = witness;
    out.all_checks_pass = ok && witness;
    report["verdict"] = witness ? kWitnessVerdict : "rejected";
    return out;
  };
  auto record = [&](StepRecorder& step) {
    if (step.status() != Status::pass) ok = false;
    steps.push_back(step.finish());
    return step.status() == Status::pass;
  };
  auto run_step = [&](StepRecorder& step, auto&& body) -> bool {
    try {
      body();
    } catch (const VerificationError& e) {
      step.check("construction", Status::fail, {{"error", e.what()}, {"witness", e.witness()}});
    } catch (const Error& e) {
      step.check("construction", Status::inconclusive, {{"error", e.what()}});
    }
    return record(step);
  };

  // Fundamental set candidate and window.
  PointSet candidate;
  if (config.fundamental_set) {
    for (const auto& s : *config.fundamental_set) candidate.push_back(detail::parse_point(act, s));
  } else if (sc.fundamental) {
    candidate = *sc.fundamental;
  } else {
    candidate = act.orbit_reps(16).representatives;
  }
  candidate = normalized(std::move(candidate));
  out.window = translates_window(act, candidate, config.window.value_or(sc.window_radius), config.budget);
  const PointSet& window = out.window;
  Json wj;
  wj["radius"] = config.window.value_or(sc.window_radius);
  wj["size"] = window.size();
  if (window.size() <= 64) wj["points"] = detail::point_list(act, window);
  report["window"] = wj;

  // 1. Properness of the action.
  {
    StepRecorder step("proper-action");
    const bool passed = run_step(step, [&] {
      const auto r = check_proper(act, window);
      Json d;
      d["verdict"] = to_string(r.verdict);
      d["max_singleton_transporter"] = r.max_singleton_cardinality;
      d["window_transporter"] = r.whole_window.cardinality;
      if (!r.witness.empty()) d["witness"] = r.witness;
      Status s = Status::pass;
      if (r.verdict == ProperReport::Verdict::not_proper) s = Status::fail;
      if (r.verdict == ProperReport::Verdict::inconclusive) s = Status::inconclusive;
      step.check("transporters-finite", s, d);
    });
    if (!passed) return finish(false);
  }

  // 2. Fundamental set.
  {
    StepRecorder step("fundamental-set");
    const bool passed = run_step(step, [&] {
      out.fundamental = verify_fundamental_set(action, candidate, window);
      step.data()["points"] = detail::point_list(act, out.fundamental->points);
      step.check("covers-window-with-finite-transporters", true);
    });
    if (!passed) return finish(false);
  }
  const FundamentalSet& F = *out.fundamental;

  // 3. Base metric.
  bool base_invariant = false;
  {
    StepRecorder step("base-metric");
    const bool passed = run_step(step, [&] {
      out.base = detail::make_base(sc, config);
      const auto table = DistanceTable::build(*out.base, window);
      const auto ax = check_axioms(table, triple_sampling);
      step.data()["provenance"] = out.base->provenance;
      step.check("pseudometric-axioms", ax.pass, detail::axioms_json(act, ax));
      const auto zero = detail::first_zero_pair(table);
      Json zd;
      if (zero) zd["witness"] = detail::pair_json(act, zero->first, zero->second);
      step.check("positive-on-distinct-points", !zero, zd);
      base_invariant = check_invariance(*out.base, window, maps).pass;
      step.data()["invariant"] = base_invariant;
    });
    if (!passed) return finish(false);
  }

  // 4. Invariance by averaging.
  {
    StepRecorder step("koszul-average");
    const bool passed = run_step(step, [&] {
      const bool average = config.koszul == "always" || (config.koszul == "auto" && !base_invariant);
      step.data()["mode"] = config.koszul;
      step.data()["forwarded_base"] = !average;
      if (!average && config.koszul == "never" && !base_invariant) {
        step.check("invariance", false, {{"error", "base metric is not invariant and averaging is disabled"}});
        return;
      }
      if (average || full_suite) {
        const auto k = koszul_truncate(*out.base, F, window);
        const auto dpp = koszul_metric(k);
        const auto dp = k.truncated_metric();
        Json radius;
        for (const auto& [x, r] : k.radius) radius[act.format(x)] = r.str();
        step.data()["truncation_radius"] = radius;
        step.data()["truncation_radius_exact"] = k.radius_exact;

        bool below = true, zero_outside = true;
        for (std::size_t i = 0; i < window.size(); ++i) {
          for (std::size_t j = i + 1; j < window.size(); ++j) {
            const auto& x = window[i];
            const auto& y = window[j];
            const ExtReal v = dp(x, y);
            if (v > (*out.base)(x, y)) below = false;
            if (!F.contains(x) && !F.contains(y) && v != ExtReal(0)) zero_outside = false;
          }
        }
        step.check("truncation-below-base", below);
        step.check("truncation-vanishes-off-F", zero_outside);
        const auto table = DistanceTable::build(dpp, window);
        const auto inv = check_invariance(dpp, window, maps);
        step.check("average-invariance", inv.pass, detail::invariance_json(act, inv));
        const auto ax = check_axioms(table, triple_sampling);
        step.check("average-axioms", ax.pass, detail::axioms_json(act, ax));
        step.check("average-positive", !detail::first_zero_pair(table));
        if (window.size() <= 12) {
          Json values = Json::array();
          for (std::size_t i = 0; i < window.size(); ++i) {
            for (std::size_t j = i + 1; j < window.size(); ++j) {
              values.push_back({{"pair", detail::pair_json(act, window[i], window[j])}, {"value", table.values[i][j].str()}});
            }
          }
          step.data()["average_table"] = values;
        }
        out.invariant_base = average ? dpp : *out.base;
      } else {
        out.invariant_base = *out.base;
      }
      if (!average) step.check("base-invariance", base_invariant);
    });
    if (!passed) return finish(false);
  }

  // 5. Orbitwise properness.
  {
    StepRecorder step("orbitwise-augment");
    const bool passed = run_step(step, [&] {
      out.augmented = orbitwise_augment(*out.invariant_base, action);
      const Pseudometric& d = *out.augmented;
      std::set<Integer> orbits;
      for (const auto& x : window) orbits.insert(act.orbit_index(x));
      step.data()["orbits_in_window"] = orbits.size();
      bool dominates = true, bounded = true;
      for (std::size_t i = 0; i < window.size(); ++i) {
        for (std::size_t j = i + 1; j < window.size(); ++j) {
          const ExtReal v = d(window[i], window[j]);
          if (v < (*out.invariant_base)(window[i], window[j])) dominates = false;
          Integer gap = act.orbit_index(window[i]) - act.orbit_index(window[j]);
          if (gap < 0) gap = -gap;
          // Orbit image of a ball of radius R stays within orbit-index distance R.
          if (v.is_finite() && Rational(gap) > v.value()) bounded = false;
        }
      }
      step.check("augment-dominates", dominates);
      step.check("orbit-image-bounded", bounded);
      const auto inv = check_invariance(d, window, maps);
      step.check("invariance", inv.pass, detail::invariance_json(act, inv));
    });
    if (!passed) return finish(false);
  }

  // 6. Measuring sticks.
  std::optional<Rational> epsilon;
  {
    StepRecorder step("stick-construction");
    const bool passed = run_step(step, [&] {
      out.sticks = std::make_shared<const StickGraph>(F, *out.augmented);
      out.stick = stick_pseudometric(out.sticks, config.budget);
      const StickGraph& g = *out.sticks;
      const Pseudometric& d = *out.augmented;
      const Pseudometric& dp = *out.stick;
      step.data()["delta"] = to_string(g.delta());
      step.data()["self_transporter_size"] = g.self_transporter().size();

      const auto leb = lebesgue_number(g, window);
      epsilon = leb.epsilon;
      Json ld;
      if (leb.epsilon) ld["epsilon"] = to_string(*leb.epsilon);
      if (!leb.epsilon && leb.witness) ld["witness"] = act.format(*leb.witness);
      step.check("lebesgue-number", leb.epsilon.has_value(), ld);

      out.island_partition = islands(g, window, 2, config.budget);
      const auto& part = *out.island_partition;
      Json census;
      census["count"] = part.count();
      if (part.count() <= 32) {
        Json members = Json::array();
        for (std::size_t id = 0; id < part.count(); ++id) {
          PointSet pts;
          for (const auto& [p, i] : part.island_of) {
            if (i == id) pts.push_back(p);
          }
          members.push_back(detail::point_list(act, pts));
        }
        census["members"] = members;
      }
      step.data()["islands"] = census;

      const auto cb = coset_bijection_check(g, window);
      Json cd{{"islands", cb.islands}, {"cosets", cb.cosets}};
      if (cb.witness) cd["witness"] = detail::pair_json(act, cb.witness->first, cb.witness->second);
      step.check("islands-match-cosets", cb.decidable ? (cb.pass ? Status::pass : Status::fail) : Status::inconclusive,
                 cd);

      bool dominates = true;
      Json dom;
      for (const auto& [i, j] : detail::sample_pairs(window.size(), config.samples, config.seed)) {
        if (dp(window[i], window[j]) < d(window[i], window[j])) {
          dominates = false;
          dom["witness"] = detail::pair_json(act, window[i], window[j]);
          break;
        }
      }
      dom["seed"] = config.seed;
      step.check("dominates-base", dominates, dom);

      bool equal_on_translates = true;
      Json eq;
      for (const auto& x : window) {
        for (const auto& e : g.neighbors(x)) {
          if (dp(x, e.to) != d(x, e.to)) {
            equal_on_translates = false;
            eq["witness"] = detail::pair_json(act, x, e.to);
          }
        }
      }
      step.check("equals-base-on-translates", equal_on_translates, eq);

      bool finite_iff = true;
      Json fi;
      for (std::size_t i = 0; i < window.size() && finite_iff; ++i) {
        for (std::size_t j = i + 1; j < window.size(); ++j) {
          const bool same = part.island_of.at(window[i]) == part.island_of.at(window[j]);
          if (dp(window[i], window[j]).is_finite() != same) {
            finite_iff = false;
            fi["witness"] = detail::pair_json(act, window[i], window[j]);
            break;
          }
        }
      }
      step.check("finite-iff-same-island", finite_iff, fi);

      if (epsilon) {
        bool bound = true;
        const Rational cutoff = radii.back();
        for (const auto& x : detail::sample_sources(window, F.points, 8, config.seed)) {
          const auto r = stick_search(g, x, SearchLimits{cutoff, config.budget});
          if (r.status == SearchStatus::budget_exceeded) throw BudgetError("stick path-bound search", config.budget);
          if (!stick_path_bound_holds(r, *epsilon)) bound = false;
        }
        step.check("stick-path-bound", bound, {{"epsilon", to_string(*epsilon)}, {"cutoff", to_string(cutoff)}});
      }
    });
    if (!passed) return finish(false);
  }

  // 7. Bridges.
  {
    StepRecorder step("bridge-construction");
    const bool passed = run_step(step, [&] {
      auto atlas = BridgeAtlas::build(out.sticks, config.bridge_cap, config.budget);
      if (config.bridge_weight_scale != 1) atlas = atlas.tampered(config.bridge_weight_scale);
      out.atlas = std::make_shared<const BridgeAtlas>(std::move(atlas));
      out.bridge = bridge_pseudometric(out.atlas, config.budget);
      const BridgeAtlas& at = *out.atlas;
      const Pseudometric& db = *out.bridge;

      Json reps = Json::array();
      for (std::size_t n = 0; n < at.representatives().size() && n < 8; ++n) {
        reps.push_back(act.group().format(at.representatives()[n]));
      }
      step.data()["coset_representatives"] = reps;
      step.data()["cosets_exhausted"] = at.exhausted();
      step.data()["weight_scale"] = to_string(at.weight_scale());

      const auto inv = check_invariance(db, window, maps);
      step.check("invariance", inv.pass, detail::invariance_json(act, inv));

      const auto table = DistanceTable::build(db, window);
      const auto inf = detail::first_infinite_pair(table);
      Json fd;
      if (inf) fd["witness"] = detail::pair_json(act, inf->first, inf->second);
      step.check("finite-everywhere", !inf, fd);

      const Rational half(1, 2);
      bool coincide = true;
      Json cd;
      for (const auto& x : window) {
        const auto b = bridge_ball(at, x, half, config.budget);
        const auto s = stick_search(*out.sticks, x, SearchLimits{half, config.budget});
        PointSet sp;
        for (const auto& [p, n] : s.settled) sp.push_back(p);
        if (b.status != BallResult::Status::complete || b.points != sp) {
          coincide = false;
          cd["witness"] = act.format(x);
          cd["bridge_ball"] = detail::point_list(act, b.points);
          cd["stick_ball"] = detail::point_list(act, sp);
          break;
        }
      }
      step.check("ball-coincidence-below-one", coincide, cd);

      bool finite_balls = true, path_bound = true;
      Json sizes = Json::array();
      for (const auto& x : detail::sample_sources(window, F.points, 4, config.seed)) {
        for (const auto& r : radii) {
          const auto res = bridge_search(at, x, r, config.budget);
          if (res.status == SearchStatus::budget_exceeded) finite_balls = false;
          if (!bridge_path_bound_holds(res, r)) path_bound = false;
          sizes.push_back({{"center", act.format(x)}, {"radius", to_string(r)}, {"size", res.settled.size()}});
        }
      }
      step.check("finite-balls", finite_balls, {{"balls", sizes}});
      step.check("bridge-path-bound", path_bound);
    });
    if (!passed) return finish(false);
  }

  // 8. Assembly and discharge of the claimed properties.
  bool all_flags = true;
  {
    StepRecorder step("final-metric");
    Json flags;
    const bool passed = run_step(step, [&] {
      out.final_metric = assemble_proper_metric(*out.augmented, *out.bridge);
      const Pseudometric& dfin = *out.final_metric;
      step.data()["provenance"] = dfin.provenance;
      auto flag = [&](const std::string& name, Status s, Json detail) {
        step.check(name, s, std::move(detail));
        flags[name] = detail::status_name(s);
        if (s != Status::pass) all_flags = false;
      };

      const auto inv = check_invariance(dfin, window, maps);
      flag("invariant", inv.pass ? Status::pass : Status::fail, detail::invariance_json(act, inv));

      const auto table = DistanceTable::build(dfin, window);
      const auto inf = detail::first_infinite_pair(table);
      flag("finite", inf ? Status::fail : Status::pass, Json::object());

      const auto ax = check_axioms(table, triple_sampling);
      const auto zero = detail::first_zero_pair(table);
      Json cd = detail::axioms_json(act, ax);
      if (zero) cd["zero_pair"] = detail::pair_json(act, zero->first, zero->second);
      flag("compatible", ax.pass && !zero ? Status::pass : Status::fail, cd);

      Status proper = Status::pass;
      Json balls = Json::array();
      for (const auto& x : detail::sample_sources(window, F.points, 4, config.seed)) {
        std::size_t previous = 0;
        for (const auto& r : radii) {
          const auto b = enumerate_ball(dfin, x, ExtReal(r), config.budget);
          if (b.status != BallResult::Status::complete) {
            proper = Status::inconclusive;
            continue;
          }
          if (b.points.size() < previous) proper = Status::fail;
          previous = b.points.size();
          balls.push_back({{"center", act.format(x)}, {"radius", to_string(r)}, {"size", b.points.size()}});
        }
      }
      flag("proper", proper, {{"balls", balls}});

      Json probes = Json::array();
      std::vector<std::pair<Point, Point>> pairs = sc.probes;
      for (const auto& [a, b] : config.probes) pairs.emplace_back(act.parse(a), act.parse(b));
      for (const auto& [x, y] : pairs) {
        probes.push_back({{"pair", detail::pair_json(act, x, y)},
                          {"bridge", (*out.bridge)(x, y).str()},
                          {"final", dfin(x, y).str()}});
      }
      step.data()["probes"] = probes;

      if (config.metric_table) {
        Json values = Json::array();
        for (std::size_t i = 0; i < window.size(); ++i) {
          for (std::size_t j = i + 1; j < window.size(); ++j) {
            values.push_back({{"pair", detail::pair_json(act, window[i], window[j])}, {"value", table.values[i][j].str()}});
          }
        }
        step.data()["metric_table"] = values;
      }
    });
    report["flags"] = flags;
    if (!passed) all_flags = false;
  }
  return finish(all_flags && ok);
}

/// The full property suite: every step's checks plus the averaged metric even
/// when it is not needed. The flat property list mirrors the step checks.
inline PipelineResult verify_suite(const ScenarioConfig& config) {
  PipelineResult r = run_pipeline(config, true);
  Json props = Json::array();
  for (const auto& step : r.report["steps"]) {
    for (const auto& c : step["checks"]) {
      props.push_back({{"step", step["step"]}, {"property", c["property"]}, {"status", c["status"]}});
    }
  }
  r.report["properties"] = props;
  return r;
}

/// Stable serialization: sorted keys, two-space indent, trailing newline.
inline std::string report_text(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace propmet
