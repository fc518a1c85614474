// Acceptance gate: one pass/fail line per criterion, all must hold.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "slicesim/engine.hpp"
#include "slicesim/errors.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/scenario.hpp"

using namespace slicesim;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(SCENARIO_DIR) + "/" + name;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int criterion, const char* name, bool ok, double seconds) {
  std::printf("criterion %d (%s): %s (%.1f s)\n", criterion, name,
              ok ? "PASS" : "FAIL", seconds);
  std::fflush(stdout);
}

// one-sided sign test: P(X >= positives) for X ~ Binomial(trials, 1/2)
double sign_test_p(int positives, int trials) {
  double p = 0.0;
  for (int k = positives; k <= trials; ++k) {
    double logc = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(trials - k + 1.0);
    p += std::exp(logc - trials * std::log(2.0));
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Flow full_buffer_flow(UeId ue, double backlog) {
  Flow f;
  f.id = 0;
  f.ue_id = ue;
  f.backlog_bits = backlog;
  return f;
}

}  // namespace

TEST_CASE("criterion 1: isolation under randomized windows") {
  Stopwatch sw;
  RngStream rng(10001);
  std::uint64_t violations = 0;
  const std::vector<Numerology> nums{{0, 1.0, 1, 168}};
  for (int window = 0; window < 1000; ++window) {
    std::uint32_t n_rb = 2 + rng.below(8);
    std::uint32_t slots = 1 + rng.below(4);
    ResourceGrid grid = build_grid({n_rb, slots, 10.0});
    Tiling tiling = carve_tiles(grid, {Tile{0, 0, n_rb, 0, slots, 0}});
    ChannelState channel;

    std::uint32_t n_slices = 1 + rng.below(4);
    std::vector<SliceDemand> demands;
    std::vector<std::vector<Flow>> storage(n_slices);
    UeId next_ue = 1;
    for (std::uint32_t s = 0; s < n_slices; ++s) {
      SliceDemand d;
      d.slice_id = s;
      std::uint32_t n_ues = 1 + rng.below(3);
      for (std::uint32_t u = 0; u < n_ues; ++u) {
        for (std::uint32_t rb = 0; rb < n_rb; ++rb)
          channel.set_se(next_ue, 0, rb, 0.25 * (1 + rng.below(20)));
        storage[s].push_back(full_buffer_flow(next_ue, rng.uniform() * 5e4));
        d.ues.push_back({next_ue, {0}});
        d.backlog_bits += storage[s].back().backlog_bits;
        ++next_ue;
      }
      demands.push_back(d);
    }

    SdmxPolicy policy;
    policy.objective = static_cast<SdmxObjective>(rng.below(4));
    if (policy.objective == SdmxObjective::FairnessWithFloor)
      for (std::uint32_t s = 0; s < n_slices; ++s)
        policy.floors[s] = rng.below(1 + (n_rb * slots) / n_slices);

    auto masks = compute_masks(grid, tiling, demands, channel, policy, window);
    if (!masks_disjoint(masks)) ++violations;
    for (const ResourceMask& m : masks)
      for (const Cell& c : m.cells)
        if (!grid.contains(c)) ++violations;

    for (std::uint32_t s = 0; s < n_slices; ++s) {
      std::vector<Flow*> flows;
      for (Flow& f : storage[s]) flows.push_back(&f);
      SlicePolicy sp;
      sp.discipline = static_cast<SliceDiscipline>(rng.below(3));
      PfState pf;
      auto frag = schedule_within_mask(demands[s], masks[s], flows, channel,
                                       tiling, nums, sp, pf);
      std::set<Cell> used;
      for (const CellAssignment& a : frag.assignments) {
        if (!masks[s].cells.count(a.cell)) ++violations;
        if (!used.insert(a.cell).second) ++violations;
      }
    }
  }
  bool ok = violations == 0 && sw.seconds() <= 60.0;
  report(1, "isolation suite", ok, sw.seconds());
  CHECK(violations == 0);
  CHECK(sw.seconds() <= 60.0);
}

TEST_CASE("criterion 2: scheduler oracle equivalence") {
  Stopwatch sw;
  RngStream rng(20002);
  int mismatches = 0;
  const std::vector<Numerology> nums{{0, 1.0, 1, 168}};
  for (int instance = 0; instance < 100; ++instance) {
    std::uint32_t n_rb = 1 + rng.below(6);
    std::uint32_t slots = 1 + rng.below(2);
    if (n_rb * slots > 12) n_rb = 12 / slots;
    ResourceGrid grid = build_grid({n_rb, slots, 10.0});
    Tiling tiling = carve_tiles(grid, {Tile{0, 0, n_rb, 0, slots, 0}});
    ChannelState channel;

    // --- mask-level: max spectral efficiency vs per-cell argmax oracle ---
    std::uint32_t n_slices = 1 + rng.below(4);
    std::vector<SliceDemand> demands;
    oracles::SliceSeTable table;
    std::vector<SliceId> demanding;
    UeId next_ue = 1;
    for (std::uint32_t s = 0; s < n_slices; ++s) {
      SliceDemand d;
      d.slice_id = s;
      d.backlog_bits = rng.below(4) == 0 ? 0.0 : 1e9;
      std::uint32_t n_ues = 1 + rng.below(2);
      for (std::uint32_t u = 0; u < n_ues; ++u, ++next_ue) {
        for (std::uint32_t rb = 0; rb < n_rb; ++rb)
          channel.set_se(next_ue, 0, rb, 0.5 * (1 + rng.below(10)));
        d.ues.push_back({next_ue, {0}});
      }
      demands.push_back(d);
      if (d.backlog_bits > 0.0) demanding.push_back(s);
      for (const Cell& c : grid.all_cells())
        table[{s, c}] = slice_best_se(d, channel, c);
    }
    SdmxPolicy policy;
    policy.objective = SdmxObjective::MaxSpectralEfficiency;
    auto masks = compute_masks(grid, tiling, demands, channel, policy, 0);
    auto want = oracles::max_se_assignment(grid.all_cells(), demanding, table);
    std::map<Cell, SliceId> got;
    for (const ResourceMask& m : masks)
      for (const Cell& c : m.cells) got[c] = m.slice_id;
    if (got != want) ++mismatches;

    // --- intra-mask: proportional fair vs reference oracle, 5 windows ---
    std::vector<UeId> ues;
    std::uint32_t pf_ues = 2 + rng.below(3);
    for (std::uint32_t u = 0; u < pf_ues; ++u) ues.push_back(100 + u);
    for (UeId ue : ues)
      for (std::uint32_t rb = 0; rb < n_rb; ++rb)
        channel.set_se(ue, 0, rb, 0.5 * (1 + rng.below(8)));
    SliceDemand d;
    d.slice_id = 50;
    d.backlog_bits = 1e18;
    for (UeId ue : ues) d.ues.push_back({ue, {0}});
    ResourceMask mask{50, 0, {}};
    for (const Cell& c : grid.all_cells()) mask.cells.insert(c);
    SlicePolicy sp;
    sp.discipline = SliceDiscipline::ProportionalFair;
    sp.pf_horizon = 20.0;
    std::vector<Flow> storage;
    for (UeId ue : ues) storage.push_back(full_buffer_flow(ue, 0.0));
    PfState pf;
    oracles::PfOracle oracle;
    oracle.horizon = 20.0;
    std::map<std::pair<UeId, Cell>, double> rate;
    for (UeId ue : ues)
      for (const Cell& c : grid.all_cells())
        rate[{ue, c}] = channel.se(ue, 0, c.rb) * 168.0;
    for (int w = 0; w < 5; ++w) {
      for (Flow& f : storage) f.backlog_bits = 1e18;
      std::vector<Flow*> flows;
      for (Flow& f : storage) flows.push_back(&f);
      auto frag = schedule_within_mask(d, mask, flows, channel, tiling, nums,
                                       sp, pf);
      std::map<UeId, double> backlog;
      for (UeId ue : ues) backlog[ue] = 1e18;
      std::vector<Cell> cells(mask.cells.begin(), mask.cells.end());
      auto pf_want = oracle.run_window(cells, ues, backlog, rate);
      if (frag.assignments.size() != pf_want.size()) ++mismatches;
      for (const CellAssignment& a : frag.assignments) {
        auto it = pf_want.find(a.cell);
        if (it == pf_want.end() || it->second != a.ue_id) ++mismatches;
      }
    }
  }
  bool ok = mismatches == 0 && sw.seconds() <= 120.0;
  report(2, "scheduler oracle equivalence", ok, sw.seconds());
  CHECK(mismatches == 0);
  CHECK(sw.seconds() <= 120.0);
}

TEST_CASE("criterion 3: multiplexing gain of demand-aware sharing") {
  Stopwatch sw;
  Scenario wf = load_scenario(scenario_path("multiplexing.json"));
  Scenario ss = wf;
  ss.sdmx.objective = SdmxObjective::StaticSplit;

  int positives = 0, nonzero = 0;
  bool never_worse = true;
  double gain_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    double served_wf = run_with_seed(wf, seed).total_served_bits();
    double served_ss = run_with_seed(ss, seed).total_served_bits();
    double gain = served_wf - served_ss;
    gain_sum += gain;
    if (gain < 0.0) never_worse = false;
    if (gain != 0.0) {
      ++nonzero;
      if (gain > 0.0) ++positives;
    }
  }
  double p = sign_test_p(positives, nonzero == 0 ? 1 : nonzero);
  bool ok = never_worse && gain_sum / 20.0 > 0.0 && p <= 0.05;
  report(3, "multiplexing gain", ok, sw.seconds());
  CHECK(never_worse);
  CHECK(gain_sum / 20.0 > 0.0);
  CHECK(p <= 0.05);
}

TEST_CASE("criterion 4: broker bound and threshold improvement") {
  Stopwatch sw;
  Scenario base = load_scenario(scenario_path("scarcity.json"));
  const std::uint64_t grid_cells = base.resource_grid.cell_count();

  // offline bound vs prune-free enumeration on 10-request instances
  int enum_mismatches = 0;
  {
    RngStream rng(40004);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SliceRequest> trace;
      for (std::uint32_t i = 0; i < 10; ++i) {
        SliceRequest r;
        r.id = i;
        r.blueprint_id = 10;
        r.demand_cells_per_window = 1 + rng.below(grid_cells);
        r.duration_windows = 1 + rng.below(5);
        r.price_per_window = 0.5 + rng.uniform() * 9.5;
        r.arrival_window = rng.below(8);
        trace.push_back(r);
      }
      double got = offline_optimal(trace, grid_cells);
      double want = oracles::offline_enumeration(trace, grid_cells);
      if (std::abs(got - want) > 1e-9 * std::max(1.0, want)) ++enum_mismatches;
    }
  }

  std::vector<std::vector<double>> candidates;
  for (double t0 : {0.3, 0.6, 0.9})
    for (double t1 : {0.0, 0.3, 0.6}) candidates.push_back({t0, t1});

  int bound_violations = 0, improvements = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto trace = build_request_trace(base, seed);
    double bound = offline_optimal(trace, grid_cells, 28);

    auto res = optimize_thresholds(candidates, [&](const std::vector<double>& t) {
      Scenario sc = base;
      sc.admission.kind = AdmissionKind::Threshold;
      sc.admission.thresholds = t;
      return run_with_seed(sc, seed).ledger.net_revenue();
    });
    Scenario always = base;
    always.admission = {AdmissionKind::AlwaysAccept, {}};
    double always_net = run_with_seed(always, seed).ledger.net_revenue();

    if (res.best_net_revenue > bound + 1e-9) ++bound_violations;
    if (res.best_net_revenue > always_net) ++improvements;
  }
  bool ok = enum_mismatches == 0 && bound_violations == 0 &&
            improvements >= 18 && sw.seconds() <= 300.0;
  report(4, "broker bound and improvement", ok, sw.seconds());
  CHECK(enum_mismatches == 0);
  CHECK(bound_violations == 0);
  CHECK(improvements >= 18);
  CHECK(sw.seconds() <= 300.0);
}

TEST_CASE("criterion 5: duplication reliability") {
  Stopwatch sw;
  double analytic = duplicate_reliability({1e-2, 1e-2});
  bool exact = analytic == 1e-4;

  const std::int64_t n = 10'000'000;
  RngStream rng(50005);
  std::int64_t lost = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    bool l1 = rng.uniform() < 1e-2;
    bool l2 = rng.uniform() < 1e-2;
    if (l1 && l2) ++lost;
  }
  double observed = static_cast<double>(lost) / static_cast<double>(n);
  double sigma = std::sqrt(analytic * (1.0 - analytic) / n);
  bool within = std::abs(observed - analytic) <= 3.0 * sigma;

  bool ok = exact && within && sw.seconds() <= 60.0;
  report(5, "duplication reliability", ok, sw.seconds());
  CHECK(exact);
  CHECK(within);
  CHECK(sw.seconds() <= 60.0);
}

TEST_CASE("criterion 6: UCA signaling reduction") {
  Stopwatch sw;
  Scenario sc = load_scenario(scenario_path("uca.json"));
  bool reduced_everywhere = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MetricsReport r = run_with_seed(sc, seed);
    if (!(r.uca_signaling.cn_messages < r.baseline_signaling.cn_messages))
      reduced_everywhere = false;
  }

  // constructed intra-only trajectory: CN stays silent
  Topology topo;
  for (int i = 0; i < 5; ++i)
    topo.nodes.push_back({static_cast<NodeId>(i), {i * 100.0, 0.0},
                          static_cast<std::uint32_t>(i), false});
  Ue ue;
  ue.id = 1;
  ue.position = {210.0, 0.0};
  ue.serving_nodes = {2};
  UcaCosts costs;
  Uca uca = form_uca(ue, topo, 3);  // {1,2,3}
  SignalingCounters total;
  for (NodeId target : {3u, 2u, 1u, 2u, 3u, 2u, 1u, 2u}) {
    ue.position = {target * 100.0 + 1.0, 0.0};
    total += on_cell_change(uca, ue, target, topo, costs);
  }
  bool cn_silent = total.cn_messages == 0;

  bool ok = reduced_everywhere && cn_silent;
  report(6, "UCA signaling reduction", ok, sw.seconds());
  CHECK(reduced_everywhere);
  CHECK(cn_silent);
}

TEST_CASE("criterion 7: reservations protect deterministic traffic") {
  Stopwatch sw;
  const std::string text = read_file(scenario_path("deterministic_traffic.json"));
  Scenario reserved = scenario_from_json_text(text);
  MetricsReport with = run(reserved);
  bool clean = with.slice_latency_violations(2) == 0;
  bool served = with.slice_served_bits(2) ==
                doctest::Approx(1680.0 * reserved.duration_windows);

  nlohmann::json root = nlohmann::json::parse(text);
  root["sdmx"].erase("reservations");
  Scenario unreserved = scenario_from_json_text(root.dump());
  MetricsReport without = run(unreserved);
  bool starved = without.slice_latency_violations(2) >= 1;

  bool ok = clean && served && starved;
  report(7, "deterministic-traffic reservations", ok, sw.seconds());
  CHECK(clean);
  CHECK(served);
  CHECK(starved);
}

TEST_CASE("criterion 8: determinism across runs and processes") {
  namespace fs = std::filesystem;
  Stopwatch sw;
  bool ok = true;

  const std::vector<std::string> names = {
      "minimal.json",  "closed_form.json", "multiplexing.json",
      "scarcity.json", "uca.json",         "deterministic_traffic.json"};

  // in-process double runs
  for (const std::string& name : names) {
    Scenario a = load_scenario(scenario_path(name));
    Scenario b = load_scenario(scenario_path(name));
    if (run_with_seed(a, 13).report_hash() != run_with_seed(b, 13).report_hash())
      ok = false;
  }

  // cross-process: the CLI must emit byte-identical artifacts
  fs::path base = fs::temp_directory_path() / "slicesim_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  auto shell = [&](const std::string& cmd) { return std::system(cmd.c_str()); };
  for (const std::string& name : names) {
    std::string a = (base / (name + ".a")).string();
    std::string b = (base / (name + ".b")).string();
    std::string cmd = std::string(CLI_PATH) + " run " + scenario_path(name) +
                      " --seed 5 --out ";
    if (shell(cmd + a + " > /dev/null") != 0) ok = false;
    if (shell(cmd + b + " > /dev/null") != 0) ok = false;
    for (const char* f : {"summary.json", "slice_windows.csv", "broker.csv"})
      if (read_file(a + "/" + f) != read_file(b + "/" + f)) ok = false;
  }

  // paired-seed compare output stable across invocations
  std::string cmp = std::string(CLI_PATH) + " compare " +
                    scenario_path("multiplexing.json") +
                    " --policies weighted_fair,static_split --seeds 1..5 > ";
  std::string out1 = (base / "cmp1.txt").string();
  std::string out2 = (base / "cmp2.txt").string();
  if (shell(cmp + out1) != 0) ok = false;
  if (shell(cmp + out2) != 0) ok = false;
  if (read_file(out1) != read_file(out2)) ok = false;
  fs::remove_all(base);

  report(8, "determinism", ok, sw.seconds());
  CHECK(ok);
}

TEST_CASE("criterion 9: closed-form throughput to the bit") {
  Stopwatch sw;
  Scenario sc = load_scenario(scenario_path("closed_form.json"));
  MetricsReport r = run(sc);
  // 500 cells * 2 bits/symbol * 168 symbols, for 10 windows
  const double expected = 500.0 * 2.0 * 168.0 * 10.0;
  bool ok = r.total_served_bits() == expected;
  report(9, "closed-form throughput", ok, sw.seconds());
  CHECK(r.total_served_bits() == expected);
}
