#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "slicesim/engine.hpp"
#include "slicesim/errors.hpp"
#include "slicesim/scenario.hpp"

using namespace slicesim;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(SCENARIO_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// smallest scenario that passes validation
const char* kTinyJson = R"({
  "grid": {"n_rb": 2, "slots_per_window": 2},
  "topology": {"area": [10.0, 10.0], "nodes": [{"id": 0, "pos": [0.0, 0.0]}]},
  "blueprints": [{"id": 1, "sla": {"min_throughput_bps": 0.0}}],
  "slices": [{"id": 1, "blueprint": 1}],
  "ues": [{"id": 1, "slice": 1, "pos": [0.0, 0.0], "serving": [0],
           "flows": [{"model": "full_buffer"}]}],
  "channel": {"mode": "constant_se", "constant_se": 1.0},
  "duration_windows": 3
})";

}  // namespace

TEST_CASE("all shipped scenarios load and validate") {
  for (const char* name :
       {"minimal.json", "closed_form.json", "multiplexing.json",
        "scarcity.json", "uca.json", "deterministic_traffic.json"}) {
    CAPTURE(name);
    Scenario sc = load_scenario(scenario_path(name));
    CHECK(sc.duration_windows > 0);
    CHECK_FALSE(config_hash(sc).empty());
  }
}

TEST_CASE("loader rejects malformed scenarios") {
  SUBCASE("not json") {
    CHECK_THROWS_AS(scenario_from_json_text("nope"), ValidationError);
  }
  SUBCASE("missing grid") {
    CHECK_THROWS_AS(scenario_from_json_text(R"({"duration_windows": 1})"),
                    ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/sc.json"), IoError);
  }
  SUBCASE("dangling blueprint reference") {
    std::string text = kTinyJson;
    text.replace(text.find("\"blueprint\": 1"), 14, "\"blueprint\": 9");
    CHECK_THROWS_AS(scenario_from_json_text(text), ValidationError);
  }
  SUBCASE("unknown serving node") {
    std::string text = kTinyJson;
    text.replace(text.find("\"serving\": [0]"), 14, "\"serving\": [5]");
    CHECK_THROWS_AS(scenario_from_json_text(text), ValidationError);
  }
  SUBCASE("duplicate slice id") {
    std::string text = kTinyJson;
    text.replace(text.find("[{\"id\": 1, \"blueprint\": 1}]"), 28,
                 "[{\"id\": 1, \"blueprint\": 1}, {\"id\": 1, \"blueprint\": 1}]");
    CHECK_THROWS_AS(scenario_from_json_text(text), ValidationError);
  }
  SUBCASE("threshold out of range") {
    std::string text = kTinyJson;
    text.insert(text.rfind('}'),
                R"(,"admission": {"kind": "threshold", "thresholds": [1.5]})");
    CHECK_THROWS_AS(scenario_from_json_text(text), ValidationError);
  }
}

TEST_CASE("zero-duration run yields an empty report") {
  std::string text = kTinyJson;
  text.replace(text.find("\"duration_windows\": 3"), 21,
               "\"duration_windows\": 0");
  Scenario sc = scenario_from_json_text(text);
  MetricsReport r = run(sc);
  CHECK(r.slice_rows.empty());
  CHECK(r.total_served_bits() == 0.0);
}

TEST_CASE("double runs are bit-identical, different seeds differ") {
  Scenario sc = load_scenario(scenario_path("minimal.json"));
  MetricsReport a = run_with_seed(sc, 11);
  MetricsReport b = run_with_seed(sc, 11);
  CHECK(a.report_hash() == b.report_hash());
  CHECK(a.slice_windows_csv() == b.slice_windows_csv());
  MetricsReport c = run_with_seed(sc, 12);
  CHECK(a.report_hash() != c.report_hash());
}

TEST_CASE("closed-form scenario serves the analytic bit count exactly") {
  Scenario sc = load_scenario(scenario_path("closed_form.json"));
  MetricsReport r = run(sc);
  // 50x10 cells, 2 bits/symbol, 168 symbols/cell, 10 windows
  const double expected = 50.0 * 10.0 * 2.0 * 168.0 * 10.0;
  CHECK(r.total_served_bits() == expected);  // exact, no tolerance
  for (const SliceWindowRow& row : r.slice_rows) {
    CHECK(row.mask_cells == 500);
    CHECK(row.served_bits == 50.0 * 10.0 * 2.0 * 168.0);
  }
}

TEST_CASE("request traces are deterministic per seed and sorted") {
  Scenario sc = load_scenario(scenario_path("scarcity.json"));
  auto t1 = build_request_trace(sc, 5);
  auto t2 = build_request_trace(sc, 5);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].id == t2[i].id);
    CHECK(t1[i].arrival_window == t2[i].arrival_window);
  }
  for (std::size_t i = 1; i < t1.size(); ++i)
    CHECK(t1[i - 1].arrival_window <= t1[i].arrival_window);
  auto t3 = build_request_trace(sc, 6);
  bool same = t1.size() == t3.size();
  if (same)
    for (std::size_t i = 0; i < t1.size(); ++i)
      same = same && t1[i].arrival_window == t3[i].arrival_window;
  CHECK_FALSE(same);
}

TEST_CASE("explicit traces take precedence and arrive in order") {
  Scenario sc = load_scenario(scenario_path("minimal.json"));
  auto trace = build_request_trace(sc, 99);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].id == 1);
  CHECK(trace[0].arrival_window == 3);
  CHECK(trace[1].id == 2);
}

TEST_CASE("replicate aggregates are consistent with per-seed reports") {
  Scenario sc = load_scenario(scenario_path("minimal.json"));
  ReplicateResult rr = replicate(sc, {1, 2, 3, 4});
  REQUIRE(rr.reports.size() == 4);
  const AggregateStat& st = rr.aggregates.at("total_served_bits");
  double sum = 0.0, lo = rr.reports[0].total_served_bits(), hi = lo;
  for (const MetricsReport& r : rr.reports) {
    double v = r.total_served_bits();
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(st.mean == doctest::Approx(sum / 4.0));
  CHECK(st.min == doctest::Approx(lo));
  CHECK(st.max == doctest::Approx(hi));
  CHECK(st.stddev >= 0.0);
  CHECK(rr.aggregates.count("net_revenue") == 1);
  CHECK(rr.aggregates.count("uca_cn_messages") == 1);
  CHECK_THROWS_AS(replicate(sc, {}), ValidationError);
}

TEST_CASE("report writing produces the full artifact set") {
  namespace fs = std::filesystem;
  Scenario sc = load_scenario(scenario_path("minimal.json"));
  MetricsReport r = run(sc);
  fs::path dir = fs::temp_directory_path() / "slicesim_runner_test";
  fs::remove_all(dir);
  r.write(dir.string());
  for (const char* f : {"slice_windows.csv", "broker.csv", "signaling.csv",
                        "summary.json", "requests.trace"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  std::string csv = read_file((dir / "slice_windows.csv").string());
  CHECK(csv.rfind("window,slice,mask_cells,served_bits,backlog_bits,"
                  "throughput_violation,latency_violations\n", 0) == 0);
  std::string summary = read_file((dir / "summary.json").string());
  CHECK(summary.find("\"report_hash\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("config hash tracks the scenario text") {
  Scenario a = scenario_from_json_text(kTinyJson);
  Scenario b = scenario_from_json_text(kTinyJson);
  CHECK(config_hash(a) == config_hash(b));
  std::string text = kTinyJson;
  text.replace(text.find("\"duration_windows\": 3"), 21,
               "\"duration_windows\": 4");
  Scenario c = scenario_from_json_text(text);
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("mask cells never exceed the grid across a full run") {
  Scenario sc = load_scenario(scenario_path("scarcity.json"));
  MetricsReport r = run_with_seed(sc, 21);
  std::map<std::uint64_t, std::uint64_t> per_window;
  for (const SliceWindowRow& row : r.slice_rows)
    per_window[row.window] += row.mask_cells;
  for (const auto& [w, cells] : per_window) CHECK(cells <= 100);
  for (double u : r.ledger.utilization) {
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
}
