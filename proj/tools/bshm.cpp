// Command-line front end: generate instances, run the algorithms, the
// oracles, and the verification suites.
#include "bshm/generator.hpp"
#include "bshm/instance_io.hpp"
#include "bshm/offline.hpp"
#include "bshm/online.hpp"
#include "bshm/oneshot.hpp"
#include "bshm/oracle.hpp"
#include "bshm/report.hpp"
#include "bshm/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace bshm;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t jobs = 8;
  std::size_t types = 4;
  std::string mu = "2";
  std::string sizes = "clustered";
  std::string horizon = "10";
  std::string out;
  std::string format = "json";
  std::string instance;
  bool no_round = false;
  bool strict_release = false;
};

GeneratorSpec spec_from(const Globals& g, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.seed = seed;
  spec.jobs = g.jobs;
  spec.mu = parse_rational(g.mu);
  spec.horizon = parse_rational(g.horizon);
  spec.sizes = g.sizes == "uniform" ? SizeDistribution::uniform
              : g.sizes == "bulky"   ? SizeDistribution::bulky
                                     : SizeDistribution::clustered;
  spec.table.count = g.types;
  return spec;
}

Instance input_instance(const Globals& g) {
  if (g.instance.empty()) return generate(spec_from(g, g.seed));
  LoadOptions options;
  options.round_rates = !g.no_round;
  options.strict_release = g.strict_release;
  return load_instance(g.instance, options);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

void emit(const Globals& g, const json& doc) { write_text(g.out, doc.dump(2) + "\n"); }

json violations_json(const Violations& found) {
  json list = json::array();
  for (const auto& v : found) list.push_back({{"check", v.check}, {"detail", v.detail}});
  return list;
}

json config_json(const MachineConfiguration& w) {
  json counts = json::object();
  for (TypeIndex z = 1; z <= w.counts.size(); ++z) {
    if (w.counts[z] != 0) counts[std::to_string(z)] = rational_to_json(w.counts[z]);
  }
  return counts;
}

int run_generate(const Globals& g) {
  emit(g, instance_to_json(input_instance(g)));
  return 0;
}

int run_graph(const Globals& g, const std::string& dot) {
  Instance instance = input_instance(g);
  auto forest = build_forest(instance.types());
  if (!dot.empty()) write_text(dot, forest.to_dot(instance.types()));
  json parents = json::array();
  for (TypeIndex z = 1; z <= forest.size(); ++z) {
    auto p = forest.parent(z);
    parents.push_back(p ? json(*p) : json(nullptr));
  }
  auto problems = check_forest(forest, instance.types());
  emit(g, {{"parents", parents}, {"roots", forest.roots()}, {"violations", violations_json(problems)}});
  return problems.empty() ? 0 : 1;
}

int run_oneshot(const Globals& g, const std::string& at) {
  Instance instance = input_instance(g);
  auto forest = build_forest(instance.types());
  Rational t = parse_rational(at);
  auto active = active_set(instance.jobs(), t);
  auto jobs = one_shot_jobs(instance, active);
  json doc{{"t", rational_to_json(t)}, {"active", json::array()}};
  for (std::size_t j : active) doc["active"].push_back(instance.jobs()[j].id);
  if (jobs.empty()) {
    doc["opt1"] = "0";
    emit(g, doc);
    return 0;
  }
  auto opt = optimal_oneshot(jobs, instance.types());
  doc["opt1"] = rational_to_json(opt.cost(instance.types()));
  doc["optimum"] = config_json(opt);
  auto alt = alternative_configuration(jobs, instance.types(), forest);
  doc["z_diamond"] = alt.top;
  doc["cn_cost"] = rational_to_json(alt.cost);
  doc["cn"] = config_json(alt.config);
  auto charged = charge(jobs, instance.types(), forest);
  doc["charge_case"] = to_string(charged.top_case);
  json per_job = json::object();
  for (std::size_t i = 0; i < active.size(); ++i) {
    per_job[instance.jobs()[active[i]].id] = rational_to_json(charged.per_job[i]);
  }
  doc["charge"] = per_job;
  doc["charge_total"] = rational_to_json(charged.total());
  emit(g, doc);
  return 0;
}

std::string audit_csv(const OfflineResult& result) {
  std::ostringstream os;
  os << "start,end,rounded_cost,cn_cost,opt1,realized_rate,packer_budget_use\n";
  for (const auto& row : result.audit) {
    os << to_string(row.segment.lo) << ',' << to_string(row.segment.hi) << ',' << to_string(row.rounded_cost) << ','
       << to_string(row.cn_cost) << ',' << (row.opt1 ? to_string(*row.opt1) : "") << ','
       << to_string(row.realized_rate) << ',' << to_string(row.packer_budget_use) << '\n';
  }
  return os.str();
}

// --out receives the schedule; the summary always goes to stdout.
int run_offline(const Globals& g, const std::string& audit_path, bool with_opt1) {
  Instance instance = input_instance(g);
  auto forest = build_forest(instance.types());
  OfflineOptions options;
  options.with_opt1 = with_opt1;
  auto result = alg_offline(instance, forest, options);
  if (!g.out.empty()) write_text(g.out, schedule_to_json(result.schedule, instance).dump(2) + "\n");
  if (!audit_path.empty()) write_text(audit_path, audit_csv(result));
  auto problems = check_offline(instance, forest, result);
  write_text("", json{{"cost", rational_to_json(result.cost)},
           {"machines", result.schedule.machine_count()},
           {"violations", violations_json(problems)}}.dump(2) + "\n");
  return problems.empty() ? 0 : 1;
}

std::string series_csv(const OnlineResult& result, std::size_t type_count) {
  std::ostringstream os;
  os << "start,end";
  for (TypeIndex z = 1; z <= type_count; ++z) os << ",n" << z;
  os << ",cost_rate\n";
  for (const auto& row : result.series) {
    os << to_string(row.segment.lo) << ',' << to_string(row.segment.hi);
    for (std::size_t n : row.open) os << ',' << n;
    os << ',' << to_string(row.cost_rate) << '\n';
  }
  return os.str();
}

int run_online(const Globals& g, const std::string& series_path, bool check_artificial) {
  Instance instance = input_instance(g);
  auto forest = build_forest(instance.types());
  auto result = simulate(instance, forest);
  if (!g.out.empty()) write_text(g.out, schedule_to_json(result.schedule, instance).dump(2) + "\n");
  if (!series_path.empty()) write_text(series_path, series_csv(result, instance.types().size()));
  Violations problems = result.budget_violations;
  json doc{{"cost", rational_to_json(result.cost)}, {"machines", result.schedule.machine_count()}};
  if (check_artificial) {
    OnlineCheckOptions options;
    options.solver.max_nodes = 200'000;
    OnlineCheckStats stats;
    problems = check_online(instance, forest, result, options, &stats);
    doc["points_checked"] = stats.points;
    doc["opt1_checked"] = stats.opt1_checked;
    doc["opt1_skipped"] = stats.opt1_skipped;
    doc["max_over_opt1"] = rational_to_json(stats.max_opt1_ratio);
  }
  doc["violations"] = violations_json(problems);
  write_text("", doc.dump(2) + "\n");
  return problems.empty() ? 0 : 1;
}

int run_oracle(const Globals& g, std::uint64_t max_nodes) {
  Instance instance = input_instance(g);
  OracleBudget budget;
  budget.max_nodes = max_nodes;
  json doc{{"opt1_lower_bound", rational_to_json(opt1_lower_bound(instance))}};
  try {
    auto result = opt2(instance, budget);
    doc["opt2"] = rational_to_json(result.cost);
    doc["witness"] = schedule_to_json(result.witness, instance);
  } catch (const OracleBudgetExceeded& e) {
    doc["opt2"] = nullptr;
    doc["error"] = e.what();
    if (e.best()) doc["best_found"] = rational_to_json(e.best()->cost);
    emit(g, doc);
    return 2;
  }
  emit(g, doc);
  return 0;
}

std::vector<NamedInstance> instance_set(const Globals& g, const std::vector<std::string>& files, std::size_t count) {
  std::vector<NamedInstance> out;
  LoadOptions options;
  options.round_rates = !g.no_round;
  options.strict_release = g.strict_release;
  for (const auto& f : files) out.push_back({f, load_instance(f, options)});
  if (!g.instance.empty()) out.push_back({g.instance, load_instance(g.instance, options)});
  if (out.empty()) {
    for (std::size_t i = 0; i < count; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "seed%06llu", static_cast<unsigned long long>(g.seed + i));
      out.push_back({name, generate(spec_from(g, g.seed + i))});
    }
  }
  return out;
}

int run_verify(const Globals& g, const std::vector<std::string>& files, std::size_t count, const std::string& level) {
  VerifyOptions options;
  options.level = level == "full" ? VerifyLevel::full : VerifyLevel::fast;
  options.seed = g.seed;
  auto report = verify(instance_set(g, files, count), options);
  if (g.format == "json") emit(g, report.to_json());
  else write_text(g.out, report.to_text());
  return report.ok() ? 0 : 1;
}

int run_bench(const Globals& g, const std::vector<std::string>& files, std::size_t count,
              const std::string& plot_path, bool timing) {
  auto start = std::chrono::steady_clock::now();
  std::vector<RatioRow> rows;
  for (const auto& [name, instance] : instance_set(g, files, count)) rows.push_back(ratio_row(name, instance));
  std::string csv = ratio_csv(rows);
  if (g.format == "csv") write_text(g.out, csv);
  else emit(g, ratio_summary(rows));
  if (!plot_path.empty()) write_text(plot_path, plot_script(g.out.empty() || g.format != "csv" ? "ratios.csv" : g.out));
  if (timing) {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "bench: " << rows.size() << " instances in " << elapsed.count() << " s\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Busy-time scheduling on heterogeneous machines"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for generated instances");
  app.add_option("--jobs", g.jobs, "Jobs per generated instance");
  app.add_option("--types", g.types, "Machine types per generated instance");
  app.add_option("--mu", g.mu, "Max/min job length ratio for generated instances (rational)");
  app.add_option("--sizes", g.sizes, "Generated size distribution")->check(CLI::IsMember({"uniform", "clustered", "bulky"}));
  app.add_option("--horizon", g.horizon, "Latest generated start time (rational)");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--instance", g.instance, "Instance JSON file; a generated instance is used when absent");
  app.add_flag("--no-round", g.no_round, "Keep raw rates instead of rounding up to powers of eight");
  app.add_flag("--strict-release", g.strict_release, "Reject instances with equal start times");

  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");

  std::string dot;
  auto* graph_cmd = app.add_subcommand("graph", "Build and check the cost-per-capacity forest");
  graph_cmd->add_option("--dot", dot, "Write the forest in DOT format");

  std::string at = "0";
  auto* oneshot_cmd = app.add_subcommand("oneshot", "Solve the one-shot problem at one instant");
  oneshot_cmd->add_option("--at", at, "Time instant (rational)");

  std::string audit_path, series_path;
  bool with_opt1 = false, check_artificial = false;
  auto* offline_cmd = app.add_subcommand("offline", "Run the offline algorithm");
  offline_cmd->add_option("--audit", audit_path, "Write the per-segment audit CSV");
  offline_cmd->add_flag("--opt1", with_opt1, "Include OPT1 in the audit");

  auto* online_cmd = app.add_subcommand("online", "Run the online simulator");
  online_cmd->add_option("--series", series_path, "Write the open-machine series CSV");
  online_cmd->add_flag("--check-artificial", check_artificial, "Check the artificial-job fill bounds inline");

  std::uint64_t max_nodes = OracleBudget{}.max_nodes;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum and the OPT1 lower bound");
  oracle_cmd->add_option("--max-nodes", max_nodes, "Search budget");

  std::vector<std::string> files;
  std::size_t count = 20;
  std::string level = "fast";
  auto* verify_cmd = app.add_subcommand("verify", "Run every invariant check");
  verify_cmd->add_option("files", files, "Instance files (default: generated set)");
  verify_cmd->add_option("--count", count, "Generated instances when no files are given");
  verify_cmd->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  std::string plot_path;
  bool timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Cost ratios over an instance set");
  bench_cmd->add_option("files", files, "Instance files (default: generated set)");
  bench_cmd->add_option("--count", count, "Generated instances when no files are given");
  bench_cmd->add_option("--plot-script", plot_path, "Write a matplotlib script for the CSV");
  bench_cmd->add_flag("--timing", timing, "Report elapsed time on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate_cmd) return run_generate(g);
    if (*graph_cmd) return run_graph(g, dot);
    if (*oneshot_cmd) return run_oneshot(g, at);
    if (*offline_cmd) return run_offline(g, audit_path, with_opt1);
    if (*online_cmd) return run_online(g, series_path, check_artificial);
    if (*oracle_cmd) return run_oracle(g, max_nodes);
    if (*verify_cmd) return run_verify(g, files, count, level);
    if (*bench_cmd) return run_bench(g, files, count, plot_path, timing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
