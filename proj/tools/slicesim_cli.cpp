#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slicesim/broker.hpp"
#include "slicesim/engine.hpp"
#include "slicesim/errors.hpp"
#include "slicesim/scenario.hpp"

namespace {

using namespace slicesim;

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  auto pos = spec.find("..");
  if (pos != std::string::npos) {
    std::uint64_t a = std::stoull(spec.substr(0, pos));
    std::uint64_t b = std::stoull(spec.substr(pos + 2));
    if (b < a) throw ValidationError("seed range end before start");
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) seeds.push_back(std::stoull(tok));
  if (seeds.empty()) throw ValidationError("empty seed list");
  return seeds;
}

// "lo:step:hi" per class, classes joined by 'x'
std::vector<std::vector<double>> parse_theta_grid(const std::string& spec) {
  std::vector<std::vector<double>> axes;
  std::istringstream is(spec);
  std::string axis;
  while (std::getline(is, axis, 'x')) {
    std::vector<std::string> parts;
    std::istringstream as(axis);
    std::string p;
    while (std::getline(as, p, ':')) parts.push_back(p);
    if (parts.size() != 3)
      throw ValidationError("theta grid axis must be lo:step:hi");
    double lo = std::stod(parts[0]), step = std::stod(parts[1]),
           hi = std::stod(parts[2]);
    if (step <= 0.0) throw ValidationError("theta grid step must be > 0");
    std::vector<double> vals;
    for (double v = lo; v <= hi + 1e-12; v += step)
      vals.push_back(std::min(v, hi));
    axes.push_back(vals);
  }
  if (axes.empty()) throw ValidationError("empty theta grid");
  std::vector<std::vector<double>> candidates{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : candidates) {
      for (double v : axis) {
        auto c = prefix;
        c.push_back(v);
        next.push_back(c);
      }
    }
    candidates = next;
  }
  return candidates;
}

struct PolicyOverride {
  std::string name;
  void apply(Scenario& sc) const {
    if (name == "static_split") sc.sdmx.objective = SdmxObjective::StaticSplit;
    else if (name == "weighted_fair") sc.sdmx.objective = SdmxObjective::WeightedFair;
    else if (name == "max_se") sc.sdmx.objective = SdmxObjective::MaxSpectralEfficiency;
    else if (name == "fairness_floor") sc.sdmx.objective = SdmxObjective::FairnessWithFloor;
    else if (name == "always_accept") sc.admission.kind = AdmissionKind::AlwaysAccept;
    else if (name == "greedy") sc.admission.kind = AdmissionKind::GreedyCapacity;
    else if (name == "threshold") sc.admission.kind = AdmissionKind::Threshold;
    else throw ValidationError("unknown policy name '" + name + "'");
  }
};

int cmd_validate(const std::string& path) {
  load_scenario(path);
  std::cout << "scenario ok: " << path << "\n";
  return 0;
}

int cmd_run(const std::string& path, std::uint64_t seed, bool seed_given,
            const std::string& out) {
  Scenario sc = load_scenario(path);
  MetricsReport report = seed_given ? run_with_seed(sc, seed) : run(sc);
  if (!out.empty()) report.write(out);
  std::cout << "seed " << report.seed << "  served_bits "
            << std::setprecision(17) << report.total_served_bits()
            << "  net_revenue " << report.ledger.net_revenue()
            << "  report_hash " << report.report_hash() << "\n";
  return 0;
}

int cmd_replicate(const std::string& path, const std::string& seeds_spec,
                  const std::string& out) {
  Scenario sc = load_scenario(path);
  ReplicateResult res = replicate(sc, parse_seeds(seeds_spec));
  std::cout << std::setprecision(17);
  std::cout << "metric,mean,stddev,min,max\n";
  std::ostringstream csv;
  csv << std::setprecision(17) << "metric,mean,stddev,min,max\n";
  for (const auto& [name, st] : res.aggregates) {
    std::ostringstream line;
    line << std::setprecision(17) << name << ',' << st.mean << ',' << st.stddev
         << ',' << st.min << ',' << st.max << '\n';
    std::cout << line.str();
    csv << line.str();
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    for (const MetricsReport& r : res.reports)
      r.write((std::filesystem::path(out) / ("seed_" + std::to_string(r.seed)))
                  .string());
    std::ofstream os(std::filesystem::path(out) / "aggregate.csv");
    if (!os) throw IoError("cannot write aggregate.csv");
    os << csv.str();
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& grid_spec,
              std::uint64_t seed, bool seed_given, const std::string& out) {
  Scenario sc = load_scenario(path);
  std::uint64_t use_seed = seed_given ? seed : sc.seed;
  std::vector<SliceRequest> trace = build_request_trace(sc, use_seed);
  auto evaluate = [&](const std::vector<double>& theta) {
    Scenario trial = sc;
    trial.admission.kind = AdmissionKind::Threshold;
    trial.admission.thresholds = theta;
    trial.request_trace = trace;
    return run_with_seed(trial, use_seed).ledger.net_revenue();
  };
  ThresholdSweepResult res =
      optimize_thresholds(parse_theta_grid(grid_spec), evaluate);
  std::ostringstream csv;
  csv << std::setprecision(17) << "thresholds,net_revenue\n";
  for (const auto& [theta, net] : res.evaluations) {
    for (std::size_t i = 0; i < theta.size(); ++i)
      csv << (i ? ";" : "") << theta[i];
    csv << ',' << net << '\n';
  }
  std::cout << std::setprecision(17) << "best_thresholds ";
  for (std::size_t i = 0; i < res.best_thresholds.size(); ++i)
    std::cout << (i ? "," : "") << res.best_thresholds[i];
  std::cout << "  net_revenue " << res.best_net_revenue << "\n";
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream os(std::filesystem::path(out) / "sweep.csv");
    if (!os) throw IoError("cannot write sweep.csv");
    os << csv.str();
  }
  return 0;
}

int cmd_compare(const std::string& path, const std::string& policies_spec,
                const std::string& seeds_spec) {
  Scenario sc = load_scenario(path);
  std::vector<PolicyOverride> policies;
  {
    std::istringstream is(policies_spec);
    std::string tok;
    while (std::getline(is, tok, ',')) policies.push_back({tok});
  }
  if (policies.empty()) throw ValidationError("no policies given");
  std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);

  std::cout << std::setprecision(17) << "seed";
  for (const PolicyOverride& p : policies)
    std::cout << ',' << p.name << "_served_bits," << p.name << "_net_revenue";
  std::cout << "\n";
  std::vector<std::vector<double>> served(policies.size());
  std::vector<std::vector<double>> net(policies.size());
  for (std::uint64_t s : seeds) {
    std::cout << s;
    for (std::size_t i = 0; i < policies.size(); ++i) {
      Scenario trial = sc;
      policies[i].apply(trial);
      MetricsReport r = run_with_seed(trial, s);
      served[i].push_back(r.total_served_bits());
      net[i].push_back(r.ledger.net_revenue());
      std::cout << ',' << served[i].back() << ',' << net[i].back();
    }
    std::cout << "\n";
  }
  std::cout << "mean";
  for (std::size_t i = 0; i < policies.size(); ++i) {
    double ms = 0.0, mn = 0.0;
    for (double v : served[i]) ms += v;
    for (double v : net[i]) mn += v;
    std::cout << ',' << ms / seeds.size() << ',' << mn / seeds.size();
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-tenant 5G slicing simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, seeds_spec = "1", grid_spec, policies_spec;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("scenario", scenario_path)->required();

  auto* run_cmd = app.add_subcommand("run", "run one seeded simulation");
  run_cmd->add_option("scenario", scenario_path)->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "seed override");
  run_cmd->add_option("--out", out_dir, "metrics output directory");

  auto* rep = app.add_subcommand("replicate", "run several seeds, aggregate");
  rep->add_option("scenario", scenario_path)->required();
  rep->add_option("--seeds", seeds_spec, "a..b or comma list")->required();
  rep->add_option("--out", out_dir);

  auto* sweep = app.add_subcommand("sweep-thresholds",
                                   "exhaustive threshold sweep on one trace");
  sweep->add_option("scenario", scenario_path)->required();
  sweep->add_option("--grid", grid_spec, "lo:step:hi per class, joined by 'x'")
      ->required();
  auto* sweep_seed_opt = sweep->add_option("--seed", seed);
  sweep->add_option("--out", out_dir);

  auto* cmp = app.add_subcommand("compare", "paired-seed policy comparison");
  cmp->add_option("scenario", scenario_path)->required();
  cmp->add_option("--policies", policies_spec, "comma-separated policy names")
      ->required();
  cmp->add_option("--seeds", seeds_spec, "a..b or comma list")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(scenario_path);
    if (run_cmd->parsed())
      return cmd_run(scenario_path, seed, seed_opt->count() > 0, out_dir);
    if (rep->parsed()) return cmd_replicate(scenario_path, seeds_spec, out_dir);
    if (sweep->parsed())
      return cmd_sweep(scenario_path, grid_spec, seed,
                       sweep_seed_opt->count() > 0, out_dir);
    if (cmp->parsed()) return cmd_compare(scenario_path, policies_spec, seeds_spec);
  } catch (const slicesim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const slicesim::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const slicesim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
