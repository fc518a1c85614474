#include "slicesim/broker.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "slicesim/errors.hpp"

namespace slicesim {

void validate_request(const SliceRequest& req, std::uint64_t grid_cells) {
  if (req.demand_cells_per_window < 1 ||
      req.demand_cells_per_window > grid_cells)
    throw ValidationError("request " + std::to_string(req.id) +
                          ": demand must be in [1, grid cells]");
  if (req.duration_windows < 1)
    throw ValidationError("request " + std::to_string(req.id) +
                          ": duration must be >= 1");
  if (req.price_per_window < 0.0 || req.penalty_per_violation < 0.0)
    throw ValidationError("request " + std::to_string(req.id) +
                          ": negative price or penalty");
}

AdmissionDecision decide(const SliceRequest& req, double committed_load,
                         std::uint64_t grid_cells,
                         const AdmissionPolicy& policy) {
  if (committed_load < 0.0)
    throw ValidationError("committed_load must be >= 0");
  double demand_frac =
      static_cast<double>(req.demand_cells_per_window) / grid_cells;
  switch (policy.kind) {
    case AdmissionKind::AlwaysAccept:
      return {true, "always-accept"};
    case AdmissionKind::GreedyCapacity:
      if (committed_load + demand_frac <= 1.0 + 1e-12)
        return {true, "capacity available"};
      return {false, "insufficient capacity"};
    case AdmissionKind::Threshold: {
      if (req.class_id >= policy.thresholds.size())
        throw ValidationError("unknown request class " +
                              std::to_string(req.class_id) +
                              " under threshold policy");
      double theta = policy.thresholds[req.class_id];
      if (theta < 0.0 || theta > 1.0)
        throw ValidationError("threshold out of [0,1]");
      if (committed_load > theta)
        return {false, "load above class threshold"};
      if (committed_load + demand_frac > 1.0 + 1e-12)
        return {false, "insufficient capacity"};
      return {true, "under class threshold"};
    }
  }
  return {false, "unreachable"};
}

double RevenueLedger::total_revenue() const {
  double t = 0.0;
  for (const auto& [id, v] : revenue) t += v;
  return t;
}

double RevenueLedger::total_penalties() const {
  double t = 0.0;
  for (const auto& [id, v] : penalties) t += v;
  return t;
}

void settle_window(RevenueLedger& ledger,
                   const std::vector<SlaOutcome>& active_slices) {
  for (const SlaOutcome& s : active_slices) {
    ledger.revenue[s.tenant_id] += s.price_per_window;
    if (s.throughput_violated)
      ledger.penalties[s.tenant_id] += s.penalty_per_violation;
  }
}

namespace {

struct OfflineSearch {
  const std::vector<SliceRequest>* trace = nullptr;
  std::uint64_t grid_cells = 0;
  std::map<std::uint64_t, std::uint64_t> load;  // window -> committed cells
  double best = 0.0;

  bool fits(const SliceRequest& r) const {
    for (std::uint64_t w = r.arrival_window; w < r.last_window(); ++w) {
      auto it = load.find(w);
      std::uint64_t cur = it == load.end() ? 0 : it->second;
      if (cur + r.demand_cells_per_window > grid_cells) return false;
    }
    return true;
  }

  void apply(const SliceRequest& r, std::int64_t sign) {
    for (std::uint64_t w = r.arrival_window; w < r.last_window(); ++w)
      load[w] = load[w] + sign * static_cast<std::int64_t>(
                                     r.demand_cells_per_window);
  }

  void recurse(std::size_t i, double revenue, double upper_rest) {
    if (revenue + upper_rest <= best) return;  // cannot beat incumbent
    if (i == trace->size()) {
      best = std::max(best, revenue);
      return;
    }
    const SliceRequest& r = (*trace)[i];
    double rest = upper_rest - r.gross_revenue();
    if (fits(r)) {
      apply(r, +1);
      recurse(i + 1, revenue + r.gross_revenue(), rest);
      apply(r, -1);
    }
    recurse(i + 1, revenue, rest);
  }
};

}  // namespace

double offline_optimal(const std::vector<SliceRequest>& trace,
                       std::uint64_t grid_cells, std::size_t max_requests) {
  if (trace.size() > max_requests)
    throw ValidationError("offline_optimal: instance too large (" +
                          std::to_string(trace.size()) + " requests, cap " +
                          std::to_string(max_requests) + ")");
  OfflineSearch search;
  search.trace = &trace;
  search.grid_cells = grid_cells;
  double upper = 0.0;
  for (const SliceRequest& r : trace) upper += r.gross_revenue();
  search.recurse(0, 0.0, upper);
  return search.best;
}

ThresholdSweepResult optimize_thresholds(
    const std::vector<std::vector<double>>& candidates,
    const std::function<double(const std::vector<double>&)>& evaluate) {
  if (candidates.empty())
    throw ValidationError("optimize_thresholds: empty candidate grid");
  ThresholdSweepResult result;
  bool first = true;
  for (const std::vector<double>& theta : candidates) {
    double net = evaluate(theta);
    result.evaluations.push_back({theta, net});
    bool better = first || net > result.best_net_revenue ||
                  (net == result.best_net_revenue &&
                   theta < result.best_thresholds);
    if (better) {
      result.best_thresholds = theta;
      result.best_net_revenue = net;
    }
    first = false;
  }
  return result;
}

void write_trace(std::ostream& os, const std::vector<SliceRequest>& trace) {
  os << std::setprecision(17);
  for (const SliceRequest& r : trace) {
    os << r.id << ' ' << r.tenant_id << ' ' << r.blueprint_id << ' '
       << r.demand_cells_per_window << ' ' << r.duration_windows << ' '
       << r.price_per_window << ' ' << r.penalty_per_violation << ' '
       << r.arrival_window << ' ' << r.class_id << '\n';
  }
}

std::vector<SliceRequest> read_trace(std::istream& is) {
  std::vector<SliceRequest> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    SliceRequest r;
    if (!(ls >> r.id >> r.tenant_id >> r.blueprint_id >>
          r.demand_cells_per_window >> r.duration_windows >>
          r.price_per_window >> r.penalty_per_violation >> r.arrival_window >>
          r.class_id))
      throw IoError("trace parse error at line " + std::to_string(lineno));
    out.push_back(r);
  }
  return out;
}

}  // namespace slicesim
