#ifndef SLICESIM_ENGINE_HPP_
#define SLICESIM_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicesim/broker.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/scheduling.hpp"
#include "slicesim/uca.hpp"

namespace slicesim {

struct SliceWindowRow {
  std::uint64_t window = 0;
  SliceId slice = 0;
  std::uint64_t mask_cells = 0;
  double served_bits = 0.0;
  double backlog_bits = 0.0;
  bool throughput_violation = false;
  std::uint64_t latency_violations = 0;
};

struct LatencyStats {
  std::uint64_t count = 0;
  double p50 = 0.0, p95 = 0.0, p99 = 0.0, max = 0.0;
};

struct MetricsReport {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::uint64_t duration_windows = 0;

  std::vector<SliceWindowRow> slice_rows;
  RevenueLedger ledger;
  SignalingCounters uca_signaling;
  SignalingCounters baseline_signaling;
  std::uint64_t cell_changes = 0;
  std::uint64_t demotion_cells = 0;
  std::map<SliceId, std::vector<double>> packet_latencies_ms;
  std::vector<SliceRequest> request_trace;

  double total_served_bits() const;
  double slice_served_bits(SliceId id) const;
  std::uint64_t slice_latency_violations(SliceId id) const;
  LatencyStats latency_stats(SliceId id) const;

  // CSV emitters with fixed column order; full-precision numbers.
  std::string slice_windows_csv() const;
  std::string broker_csv() const;
  std::string signaling_csv() const;
  std::string summary_json() const;
  std::string report_hash() const;

  void write(const std::string& out_dir) const;
};

// Builds the run's exogenous request arrivals (explicit trace, or the
// stochastic class process under the run's broker RNG substream).
std::vector<SliceRequest> build_request_trace(const Scenario& sc,
                                              std::uint64_t seed);

MetricsReport run(const Scenario& sc);
MetricsReport run_with_seed(const Scenario& sc, std::uint64_t seed);

struct AggregateStat {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
};

struct ReplicateResult {
  std::vector<MetricsReport> reports;
  std::map<std::string, AggregateStat> aggregates;  // metric name -> stats
};

ReplicateResult replicate(const Scenario& sc,
                          const std::vector<std::uint64_t>& seeds);

}  // namespace slicesim

#endif
