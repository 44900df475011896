#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "propmet/propmet.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string config_path;
  std::optional<std::size_t> window;
  std::string radius;
  std::string out;
  std::string dot;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::string bridge_scale;
  bool table = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "built-in scenario id (see `propmet list`)");
  cmd->add_option("--config", o.config_path, "JSON config file (schema propmet-config/1)")->check(CLI::ExistingFile);
  cmd->add_option("--window", o.window, "word-ball radius of the window of translates of F");
  cmd->add_option("--radius", o.radius, "largest ball radius checked (powers of two up to R, and R)");
  cmd->add_option("--seed", o.seed, "seed for sampled checks");
  cmd->add_option("--budget", o.budget, "cap on settled vertices per search and enumerated elements");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw propmet::UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw propmet::UsageError("cannot write '" + path + "'");
  out << text;
}

propmet::ScenarioConfig build_config(const Options& o) {
  propmet::ScenarioConfig c;
  if (!o.config_path.empty()) {
    propmet::Json j;
    try {
      j = propmet::Json::parse(read_file(o.config_path));
    } catch (const propmet::Json::parse_error& e) {
      throw propmet::UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    c = propmet::parse_config(j);
  }
  if (!o.scenario.empty()) c.scenario = o.scenario;
  if (o.window) c.window = o.window;
  if (o.seed) c.seed = *o.seed;
  if (o.budget) c.budget = *o.budget;
  if (!o.radius.empty()) {
    const propmet::Rational r = propmet::parse_rational(o.radius);
    if (r <= 0) throw propmet::UsageError("--radius must be positive");
    c.radii.clear();
    for (propmet::Rational p = 1; p < r; p *= 2) c.radii.push_back(p);
    c.radii.push_back(r);
  }
  if (!o.bridge_scale.empty()) c.bridge_weight_scale = propmet::parse_rational(o.bridge_scale);
  if (o.table) c.metric_table = true;
  return c;
}

void emit_report(const propmet::PipelineResult& r, const Options& o) {
  const std::string text = propmet::report_text(r.report);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

void write_stick_dot(const propmet::PipelineResult& r, const std::string& path) {
  if (!r.sticks || !r.island_partition) throw propmet::UsageError("pipeline stopped before the stick graph was built");
  write_file(path, propmet::stick_graph_dot(*r.sticks, r.window, *r.island_partition));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant proper metrics for proper actions on discrete spaces"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "build the metric and print the certification report");
  add_common(run, o);
  run->add_option("--out", o.out, "write the JSON report here instead of stdout");
  run->add_option("--dot", o.dot, "also write the window stick graph as DOT");
  run->add_option("--bridge-scale", o.bridge_scale, "debug: multiply bridge lengths (negative control)");
  run->add_flag("--table", o.table, "include the final metric on all window pairs");

  auto* verify = app.add_subcommand("verify", "run every property check and list the results");
  add_common(verify, o);
  verify->add_option("--out", o.out, "write the JSON report here instead of stdout");
  verify->add_option("--bridge-scale", o.bridge_scale, "debug: multiply bridge lengths (negative control)");

  auto* export_graph = app.add_subcommand("export-graph", "write DOT graphs of sticks and of islands with bridges");
  add_common(export_graph, o);
  export_graph->add_option("--dot", o.dot, "stick graph DOT path")->required();
  export_graph->add_option("--out", o.out, "island/bridge quotient DOT path");

  auto* list = app.add_subcommand("list", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& id : propmet::scenario_ids()) {
        std::cout << id << "\t" << propmet::make_scenario(id).description << "\n";
      }
      return 0;
    }
    const auto config = build_config(o);
    if (run->parsed()) {
      const auto r = propmet::run_pipeline(config);
      emit_report(r, o);
      if (!o.dot.empty()) write_stick_dot(r, o.dot);
      return r.witness ? 0 : 1;
    }
    if (verify->parsed()) {
      const auto r = propmet::verify_suite(config);
      emit_report(r, o);
      return r.all_checks_pass ? 0 : 1;
    }
    if (export_graph->parsed()) {
      const auto r = propmet::run_pipeline(config);
      write_stick_dot(r, o.dot);
      if (!o.out.empty()) {
        if (!r.atlas) throw propmet::UsageError("pipeline stopped before bridges were built");
        write_file(o.out, propmet::bridge_quotient_dot(*r.atlas, r.window, *r.island_partition));
      }
      return 0;
    }
  } catch (const propmet::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const propmet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
