#ifndef SLICESIM_BROKER_HPP_
#define SLICESIM_BROKER_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "slicesim/slices.hpp"

namespace slicesim {

struct SliceRequest {
  std::uint32_t id = 0;
  TenantId tenant_id = 0;
  SliceId blueprint_id = 0;
  std::uint64_t demand_cells_per_window = 1;
  std::uint64_t duration_windows = 1;
  double price_per_window = 0.0;
  double penalty_per_violation = 0.0;
  std::uint64_t arrival_window = 0;
  std::uint32_t class_id = 0;

  std::uint64_t last_window() const {
    return arrival_window + duration_windows;  // half-open [arrival, last)
  }
  double gross_revenue() const {
    return price_per_window * static_cast<double>(duration_windows);
  }
};

void validate_request(const SliceRequest& req, std::uint64_t grid_cells);

enum class AdmissionKind { AlwaysAccept, GreedyCapacity, Threshold };

struct AdmissionPolicy {
  AdmissionKind kind = AdmissionKind::AlwaysAccept;
  std::vector<double> thresholds;  // per-class load thresholds in [0,1]
};

struct AdmissionDecision {
  bool accept = false;
  std::string reason;
};

// committed_load is the committed-capacity fraction at the arrival instant.
AdmissionDecision decide(const SliceRequest& req, double committed_load,
                         std::uint64_t grid_cells,
                         const AdmissionPolicy& policy);

struct RevenueLedger {
  std::map<TenantId, double> revenue;
  std::map<TenantId, double> penalties;
  std::map<std::uint32_t, std::uint64_t> accepted_per_class;
  std::map<std::uint32_t, std::uint64_t> rejected_per_class;
  std::vector<double> utilization;  // committed cells / grid cells, per window

  double total_revenue() const;
  double total_penalties() const;
  double net_revenue() const { return total_revenue() - total_penalties(); }
};

struct SlaOutcome {
  SliceId slice_id = 0;
  TenantId tenant_id = 0;
  double price_per_window = 0.0;
  double penalty_per_violation = 0.0;
  bool throughput_violated = false;
};

// Accrues one window of prices and violation penalties.
void settle_window(RevenueLedger& ledger,
                   const std::vector<SlaOutcome>& active_slices);

// Exact maximum penalty-free revenue over all accept/reject vectors
// respecting per-window cell capacity; exhaustive with infeasible-prefix
// pruning. An upper bound on any achievable net revenue.
double offline_optimal(const std::vector<SliceRequest>& trace,
                       std::uint64_t grid_cells,
                       std::size_t max_requests = 24);

struct ThresholdSweepResult {
  std::vector<double> best_thresholds;
  double best_net_revenue = 0.0;
  // every evaluated candidate with its net revenue, in evaluation order
  std::vector<std::pair<std::vector<double>, double>> evaluations;
};

// Evaluates every candidate threshold vector on the identical trace via the
// supplied evaluation function; argmax net revenue, ties to the
// lexicographically smallest vector.
ThresholdSweepResult optimize_thresholds(
    const std::vector<std::vector<double>>& candidates,
    const std::function<double(const std::vector<double>&)>& evaluate);

// Line-delimited request trace: one request per line, fields in stable order
// "id tenant blueprint demand duration price penalty arrival class".
void write_trace(std::ostream& os, const std::vector<SliceRequest>& trace);
std::vector<SliceRequest> read_trace(std::istream& is);

}  // namespace slicesim

#endif
