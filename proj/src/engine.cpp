#include "slicesim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "slicesim/errors.hpp"
#include "slicesim/rng.hpp"

namespace slicesim {

namespace {

constexpr double kEps = 1e-6;

struct ActiveSlice {
  SliceId id = 0;
  const SliceBlueprint* blueprint = nullptr;
  SliceInstance instance;
  SlicePolicy policy;
  bool from_request = false;
  SliceRequest request;  // meaningful when from_request
};

double percentile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  double idx = p * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(idx));
  std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
  double frac = idx - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

double MetricsReport::total_served_bits() const {
  double t = 0.0;
  for (const SliceWindowRow& r : slice_rows) t += r.served_bits;
  return t;
}

double MetricsReport::slice_served_bits(SliceId id) const {
  double t = 0.0;
  for (const SliceWindowRow& r : slice_rows)
    if (r.slice == id) t += r.served_bits;
  return t;
}

std::uint64_t MetricsReport::slice_latency_violations(SliceId id) const {
  std::uint64_t t = 0;
  for (const SliceWindowRow& r : slice_rows)
    if (r.slice == id) t += r.latency_violations;
  return t;
}

LatencyStats MetricsReport::latency_stats(SliceId id) const {
  LatencyStats st;
  auto it = packet_latencies_ms.find(id);
  if (it == packet_latencies_ms.end() || it->second.empty()) return st;
  std::vector<double> sorted = it->second;
  std::sort(sorted.begin(), sorted.end());
  st.count = sorted.size();
  st.p50 = percentile(sorted, 0.50);
  st.p95 = percentile(sorted, 0.95);
  st.p99 = percentile(sorted, 0.99);
  st.max = sorted.back();
  return st;
}

std::string MetricsReport::slice_windows_csv() const {
  std::ostringstream os;
  os << "window,slice,mask_cells,served_bits,backlog_bits,"
        "throughput_violation,latency_violations\n";
  for (const SliceWindowRow& r : slice_rows) {
    os << r.window << ',' << r.slice << ',' << r.mask_cells << ','
       << fmt(r.served_bits) << ',' << fmt(r.backlog_bits) << ','
       << (r.throughput_violation ? 1 : 0) << ',' << r.latency_violations
       << '\n';
  }
  return os.str();
}

std::string MetricsReport::broker_csv() const {
  std::ostringstream os;
  os << "window,utilization\n";
  for (std::size_t w = 0; w < ledger.utilization.size(); ++w)
    os << w << ',' << fmt(ledger.utilization[w]) << '\n';
  return os.str();
}

std::string MetricsReport::signaling_csv() const {
  std::ostringstream os;
  os << "counter,ran_messages,cn_messages\n";
  os << "uca," << uca_signaling.ran_messages << ','
     << uca_signaling.cn_messages << '\n';
  os << "baseline," << baseline_signaling.ran_messages << ','
     << baseline_signaling.cn_messages << '\n';
  return os.str();
}

std::string MetricsReport::summary_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["duration_windows"] = duration_windows;
  j["total_served_bits"] = total_served_bits();
  j["cell_changes"] = cell_changes;
  j["demotion_cells"] = demotion_cells;
  j["signaling"]["uca"] = {{"ran", uca_signaling.ran_messages},
                           {"cn", uca_signaling.cn_messages}};
  j["signaling"]["baseline"] = {{"ran", baseline_signaling.ran_messages},
                                {"cn", baseline_signaling.cn_messages}};
  j["ledger"]["revenue"] = ledger.total_revenue();
  j["ledger"]["penalties"] = ledger.total_penalties();
  j["ledger"]["net_revenue"] = ledger.net_revenue();
  for (const auto& [cls, n] : ledger.accepted_per_class)
    j["ledger"]["accepted_per_class"][std::to_string(cls)] = n;
  for (const auto& [cls, n] : ledger.rejected_per_class)
    j["ledger"]["rejected_per_class"][std::to_string(cls)] = n;
  std::set<SliceId> ids;
  for (const SliceWindowRow& r : slice_rows) ids.insert(r.slice);
  for (SliceId id : ids) {
    nlohmann::json s;
    s["served_bits"] = slice_served_bits(id);
    s["latency_violations"] = slice_latency_violations(id);
    LatencyStats st = latency_stats(id);
    s["latency_ms"] = {{"count", st.count}, {"p50", st.p50}, {"p95", st.p95},
                       {"p99", st.p99},     {"max", st.max}};
    j["slices"][std::to_string(id)] = s;
  }
  j["report_hash"] = report_hash();
  return j.dump(2) + "\n";
}

std::string MetricsReport::report_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (char c : s) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ULL;
    }
  };
  mix(slice_windows_csv());
  mix(broker_csv());
  mix(signaling_csv());
  std::ostringstream os;
  os << fmt(ledger.total_revenue()) << '|' << fmt(ledger.total_penalties());
  mix(os.str());
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

void MetricsReport::write(const std::string& out_dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir);
  auto dump = [&](const std::string& name, const std::string& content) {
    std::ofstream os(fs::path(out_dir) / name);
    if (!os) throw IoError("cannot write " + name + " in " + out_dir);
    os << content;
  };
  dump("slice_windows.csv", slice_windows_csv());
  dump("broker.csv", broker_csv());
  dump("signaling.csv", signaling_csv());
  dump("summary.json", summary_json());
  std::ostringstream trace;
  write_trace(trace, request_trace);
  dump("requests.trace", trace.str());
}

std::vector<SliceRequest> build_request_trace(const Scenario& sc,
                                              std::uint64_t seed) {
  if (!sc.request_trace.empty()) {
    std::vector<SliceRequest> trace = sc.request_trace;
    std::sort(trace.begin(), trace.end(),
              [](const SliceRequest& a, const SliceRequest& b) {
                if (a.arrival_window != b.arrival_window)
                  return a.arrival_window < b.arrival_window;
                return a.id < b.id;
              });
    return trace;
  }
  std::vector<SliceRequest> trace;
  RngStream rng = RngStream(seed).split("broker");
  std::uint32_t next_id = 0;
  for (std::uint64_t w = 0; w < sc.duration_windows; ++w) {
    for (const RequestClass& c : sc.request_classes) {
      if (c.stop_after_window != 0 && w >= c.stop_after_window) continue;
      if (rng.uniform() >= c.prob_per_window) continue;
      SliceRequest r;
      r.id = next_id++;
      r.tenant_id = sc.blueprint(c.blueprint_id).tenant_id;
      r.blueprint_id = c.blueprint_id;
      r.demand_cells_per_window = c.demand_cells;
      r.duration_windows = c.duration_windows;
      r.price_per_window = c.price_per_window;
      r.penalty_per_violation = c.penalty_per_violation;
      r.arrival_window = w;
      r.class_id = c.class_id;
      trace.push_back(r);
    }
  }
  return trace;
}

MetricsReport run_with_seed(const Scenario& sc, std::uint64_t seed) {
  const ResourceGrid& grid = sc.resource_grid;
  const double window_ms = grid.window_ms;
  const std::uint64_t grid_cells = grid.cell_count();

  RngStream root(seed);
  RngStream channel_rng = root.split("channel");
  RngStream traffic_rng = root.split("traffic");
  RngStream mobility_rng = root.split("mobility");

  MetricsReport report;
  report.seed = seed;
  report.config_hash = config_hash(sc);
  report.duration_windows = sc.duration_windows;
  report.request_trace = build_request_trace(sc, seed);

  // --- mutable world state ---
  std::vector<Ue> ues;
  std::map<UeId, std::vector<Flow>> flows_by_ue;
  std::map<SliceId, ActiveSlice> slices;
  std::map<SliceId, PfState> pf_states;
  std::map<UeId, const McConfig*> mc_by_ue;
  std::map<UeId, Uca> ucas;
  SdmxPolicy sdmx = sc.sdmx;

  for (const McConfig& m : sc.mc_configs) mc_by_ue[m.ue_id] = &m;

  auto add_static_slice = [&](SliceId id) {
    ActiveSlice s;
    s.id = id;
    s.blueprint = &sc.blueprint(sc.slice_blueprint.at(id));
    NfSplit split = split_functions(*s.blueprint);
    s.instance.id = id;
    s.instance.blueprint_id = s.blueprint->id;
    s.instance.dedicated_nfs = split.dedicated;
    s.instance.common_nfs = split.common;
    s.instance.admitted_until = sc.duration_windows;
    s.instance = transition(s.instance, LifecycleEvent::Admit);
    s.instance = transition(s.instance, LifecycleEvent::Activate);
    s.policy = sc.policy_for(id);
    slices[id] = s;
  };
  for (SliceId id : sc.static_slices) add_static_slice(id);

  for (const UeSpec& spec : sc.ues) {
    ues.push_back(spec.ue);
    if (ues.back().serving_nodes.empty() && !sc.topology.nodes.empty())
      ues.back().serving_nodes = {sc.topology.nearest(spec.ue.position)};
    flows_by_ue[spec.ue.id] = spec.flows;
  }

  if (sc.uca.enabled) {
    for (const Ue& ue : ues)
      ucas[ue.id] = form_uca(ue, sc.topology, sc.uca.radius_nodes);
  }

  std::uint64_t committed_cells = 0;
  std::size_t trace_cursor = 0;
  const bool capacity_enforced = sc.admission.kind != AdmissionKind::AlwaysAccept;

  auto slice_of_request = [](const SliceRequest& r) -> SliceId {
    return 1000 + r.id;
  };
  auto ue_of_request = [](const SliceRequest& r) -> UeId { return 10000 + r.id; };

  auto class_of = [&](std::uint32_t class_id) -> const RequestClass* {
    for (const RequestClass& c : sc.request_classes)
      if (c.class_id == class_id) return &c;
    return nullptr;
  };

  for (std::uint64_t w = 0; w < sc.duration_windows; ++w) {
    const double now_ms = static_cast<double>(w) * window_ms;
    const double window_end_ms = now_ms + window_ms;

    // 1) expire request slices, then admit this window's arrivals
    for (auto it = slices.begin(); it != slices.end();) {
      ActiveSlice& s = it->second;
      if (s.from_request && w >= s.request.last_window()) {
        committed_cells -= s.request.demand_cells_per_window;
        sdmx.floors.erase(s.id);
        sdmx.weights.erase(s.id);
        UeId ue_id = ue_of_request(s.request);
        flows_by_ue.erase(ue_id);
        ues.erase(std::remove_if(ues.begin(), ues.end(),
                                 [&](const Ue& u) { return u.id == ue_id; }),
                  ues.end());
        ucas.erase(ue_id);
        it = slices.erase(it);
      } else {
        ++it;
      }
    }

    while (trace_cursor < report.request_trace.size() &&
           report.request_trace[trace_cursor].arrival_window == w) {
      const SliceRequest& r = report.request_trace[trace_cursor++];
      double load = static_cast<double>(committed_cells) / grid_cells;
      AdmissionDecision d = decide(r, load, grid_cells, sc.admission);
      SliceInstance inst;
      inst.id = slice_of_request(r);
      inst.blueprint_id = r.blueprint_id;
      if (!d.accept) {
        report.ledger.rejected_per_class[r.class_id] += 1;
        transition(inst, LifecycleEvent::Reject);
        continue;
      }
      report.ledger.accepted_per_class[r.class_id] += 1;
      committed_cells += r.demand_cells_per_window;

      ActiveSlice s;
      s.id = inst.id;
      s.blueprint = &sc.blueprint(r.blueprint_id);
      NfSplit split = split_functions(*s.blueprint);
      inst.dedicated_nfs = split.dedicated;
      inst.common_nfs = split.common;
      inst.admitted_from = w;
      inst.admitted_until = r.last_window();
      inst = transition(inst, LifecycleEvent::Admit);
      inst = transition(inst, LifecycleEvent::Activate);
      s.instance = inst;
      s.policy = sc.policy_for(s.id);
      s.from_request = true;
      s.request = r;
      slices[s.id] = s;

      sdmx.floors[s.id] = r.demand_cells_per_window;
      sdmx.weights[s.id] = s.blueprint->sla.priority_weight;

      Ue ue;
      ue.id = ue_of_request(r);
      ue.slice_id = s.id;
      const RequestClass* cls = class_of(r.class_id);
      ue.position = cls ? cls->ue_position : Position{};
      if (!sc.topology.nodes.empty())
        ue.serving_nodes = {sc.topology.nearest(ue.position)};
      ues.push_back(ue);
      Flow f;
      f.id = 0;
      f.ue_id = ue.id;
      f.model = cls ? cls->ue_traffic : TrafficModel{};
      flows_by_ue[ue.id] = {f};
      if (sc.uca.enabled)
        ucas[ue.id] = form_uca(ue, sc.topology, sc.uca.radius_nodes);
    }

    if (capacity_enforced && committed_cells > grid_cells)
      throw InvariantViolation("committed load above 1 under capacity policy");
    report.ledger.utilization.push_back(static_cast<double>(committed_cells) /
                                        grid_cells);

    // 2) channel
    ChannelState channel =
        step_channel(ues, sc.topology, grid.n_rb, sc.channel, channel_rng);

    // 3) traffic arrivals for [now, now + window)
    for (auto& [ue_id, flows] : flows_by_ue)
      generate_traffic(flows, now_ms, window_ms, traffic_rng);

    // 4) per-slice demand snapshots (start-of-window backlog)
    std::vector<SliceDemand> demands;
    std::map<SliceId, double> start_backlog;
    std::map<SliceId, std::vector<Flow*>> slice_flows;
    for (auto& [id, s] : slices) {
      SliceDemand d;
      d.slice_id = id;
      d.priority_weight = s.blueprint->sla.priority_weight;
      d.numerology_id = s.blueprint->numerology_id;
      d.ran_option = s.blueprint->ran_option;
      for (Ue& ue : ues) {
        if (ue.slice_id != id) continue;
        auto mc = mc_by_ue.find(ue.id);
        std::vector<NodeId> legs =
            mc != mc_by_ue.end() ? mc->second->legs : ue.serving_nodes;
        d.ues.push_back({ue.id, legs});
        for (Flow& f : flows_by_ue[ue.id]) {
          d.backlog_bits += f.backlog_bits;
          slice_flows[id].push_back(&f);
        }
      }
      std::sort(d.ues.begin(), d.ues.end());
      start_backlog[id] = d.backlog_bits;
      demands.push_back(d);
    }
    std::sort(demands.begin(), demands.end(),
              [](const SliceDemand& a, const SliceDemand& b) {
                return a.slice_id < b.slice_id;
              });

    // 5) SDM-X masks
    std::vector<ResourceMask> masks =
        compute_masks(grid, sc.tiling, demands, channel, sdmx, w);

    // 6) Option 2 common-MAC joint pass over the participating slices
    std::vector<SliceDemand> opt2_slices;
    std::map<SliceId, std::vector<std::uint32_t>> priority_orders;
    for (const SliceDemand& d : demands)
      if (d.ran_option == RanOption::Option2) opt2_slices.push_back(d);
    if (!opt2_slices.empty()) {
      std::vector<ResourceMask> opt2_masks;
      for (const ResourceMask& m : masks)
        for (const SliceDemand& d : opt2_slices)
          if (m.slice_id == d.slice_id) opt2_masks.push_back(m);
      std::vector<PreSchedule> pre;
      for (const SliceDemand& d : opt2_slices) {
        PreSchedule p;
        p.slice_id = d.slice_id;
        std::vector<Flow*> ordered = slice_flows[d.slice_id];
        std::sort(ordered.begin(), ordered.end(),
                  [](const Flow* a, const Flow* b) {
                    if (a->ue_id != b->ue_id) return a->ue_id < b->ue_id;
                    return a->id < b->id;
                  });
        for (Flow* f : ordered) p.flow_order.push_back(f->id);
        pre.push_back(p);
        priority_orders[d.slice_id] = p.flow_order;
      }
      std::vector<DemotionEvent> demotions = option2_joint_allocate(
          opt2_slices, opt2_masks, pre, channel, sc.tiling, sc.numerologies);
      for (const DemotionEvent& e : demotions) report.demotion_cells += e.cells_moved;
      for (ResourceMask& m : masks)
        for (const ResourceMask& rm : opt2_masks)
          if (m.slice_id == rm.slice_id) m = rm;
    }

    // 7) hard isolation invariants
    if (!masks_disjoint(masks))
      throw InvariantViolation("overlapping slice masks in window " +
                               std::to_string(w));
    for (const ResourceMask& m : masks)
      for (const Cell& c : m.cells)
        if (!grid.contains(c))
          throw InvariantViolation("mask cell outside grid in window " +
                                   std::to_string(w));

    // floor guarantee under FairnessWithFloor
    if (sdmx.objective == SdmxObjective::FairnessWithFloor) {
      for (const SliceDemand& d : demands) {
        auto fit = sdmx.floors.find(d.slice_id);
        if (fit == sdmx.floors.end() || d.backlog_bits <= 0.0) continue;
        for (const ResourceMask& m : masks)
          if (m.slice_id == d.slice_id && m.cells.size() < fit->second &&
              d.ran_option != RanOption::Option2)
            throw InvariantViolation("floor not met for slice " +
                                     std::to_string(d.slice_id));
      }
    }

    // 8) SDM-C: per-slice intra-mask scheduling
    std::map<SliceId, AllocationFragment> fragments;
    for (const SliceDemand& d : demands) {
      const ResourceMask* mask = nullptr;
      for (const ResourceMask& m : masks)
        if (m.slice_id == d.slice_id) mask = &m;
      if (!mask) continue;
      const std::vector<std::uint32_t>* order = nullptr;
      auto oit = priority_orders.find(d.slice_id);
      if (oit != priority_orders.end()) order = &oit->second;
      fragments[d.slice_id] = schedule_within_mask(
          d, *mask, slice_flows[d.slice_id], channel, sc.tiling,
          sc.numerologies, slices.at(d.slice_id).policy, pf_states[d.slice_id],
          order);
    }

    // allocations must stay inside their slice's mask, one UE per cell
    for (const auto& [id, frag] : fragments) {
      const ResourceMask* mask = nullptr;
      for (const ResourceMask& m : masks)
        if (m.slice_id == id) mask = &m;
      std::set<Cell> used;
      for (const CellAssignment& a : frag.assignments) {
        if (!mask || !mask->cells.count(a.cell))
          throw InvariantViolation("allocation outside slice mask in window " +
                                   std::to_string(w));
        if (!used.insert(a.cell).second)
          throw InvariantViolation("cell assigned twice in window " +
                                   std::to_string(w));
      }
    }

    // 9) MC split-mode leg attribution and conservation
    for (const auto& [id, frag] : fragments) {
      std::map<UeId, std::map<NodeId, double>> leg_bits;
      for (const CellAssignment& a : frag.assignments) {
        auto mc = mc_by_ue.find(a.ue_id);
        if (mc == mc_by_ue.end() || mc->second->mode != McMode::Split) continue;
        NodeId leg = channel.best_leg(a.ue_id, mc->second->legs, a.cell.rb);
        leg_bits[a.ue_id][leg] += a.bits;
      }
      for (const auto& [ue_id, per_leg] : leg_bits) {
        std::vector<double> parts;
        for (const auto& [leg, bits] : per_leg) parts.push_back(bits);
        double delivered = frag.ue_bits(ue_id);
        if (std::abs(aggregate_throughput(parts) - delivered) >
            kEps * std::max(1.0, delivered))
          throw InvariantViolation("split-mode leg bits do not sum to UE bits");
      }
    }

    // 10) latency accounting
    std::map<SliceId, std::uint64_t> late_packets;
    for (const auto& [id, frag] : fragments) {
      const ActiveSlice& s = slices.at(id);
      double budget = s.blueprint->sla.latency_budget_ms;
      for (const CompletedPacket& p : frag.completed_packets) {
        double extra = 0.0;
        auto mc = mc_by_ue.find(p.ue_id);
        if (mc != mc_by_ue.end())
          extra = anchor_latency_ms(*mc->second, sc.topology, sc.transport);
        double latency = window_end_ms - p.arrival_ms + extra;
        report.packet_latencies_ms[id].push_back(latency);
        if (latency > budget + kEps) late_packets[id] += 1;
      }
    }
    // packets still queued past their deadline count once, when first overdue
    for (auto& [id, s] : slices) {
      double budget = s.blueprint->sla.latency_budget_ms;
      for (Flow* f : slice_flows[id]) {
        for (Packet& p : f->queue) {
          if (!p.counted_late && window_end_ms - p.arrival_ms > budget + kEps) {
            p.counted_late = true;
            late_packets[id] += 1;
          }
        }
      }
    }

    // backlog conservation for finite-traffic flows
    for (auto& [ue_id, flows] : flows_by_ue) {
      for (Flow& f : flows) {
        if (f.is_full_buffer()) continue;
        double queued = 0.0;
        for (const Packet& p : f.queue) queued += p.remaining;
        if (f.backlog_bits < -kEps ||
            std::abs(f.backlog_bits - queued) > kEps * std::max(1.0, queued))
          throw InvariantViolation("backlog does not match queued bits");
      }
    }

    // 11) mobility and UCA / baseline signaling
    std::vector<CellChange> changes;
    if (!sc.topology.nodes.empty())
      changes = move_ues(ues, window_ms, sc.topology, sc.area_x, sc.area_y,
                         mobility_rng);
    for (const CellChange& ch : changes) {
      ++report.cell_changes;
      report.baseline_signaling += baseline_handover(sc.uca.costs);
      if (sc.uca.enabled) {
        Ue* ue = nullptr;
        for (Ue& u : ues)
          if (u.id == ch.ue_id) ue = &u;
        auto it = ucas.find(ch.ue_id);
        if (ue && it != ucas.end()) {
          report.uca_signaling +=
              on_cell_change(it->second, *ue, ch.to, sc.topology, sc.uca.costs);
          if (!it->second.nodes.count(it->second.anchor))
            throw InvariantViolation("UCA anchor left its node set");
        }
      }
    }

    // 12) settlement and metric rows
    std::vector<SlaOutcome> outcomes;
    for (auto& [id, s] : slices) {
      double served = fragments.count(id) ? fragments.at(id).total_bits() : 0.0;
      double required = s.blueprint->sla.min_throughput_bps * window_ms / 1000.0;
      double satisfiable = std::min(required, start_backlog[id]);
      bool violated = served + kEps < satisfiable;
      if (s.from_request) {
        SlaOutcome o;
        o.slice_id = id;
        o.tenant_id = s.request.tenant_id;
        o.price_per_window = s.request.price_per_window;
        o.penalty_per_violation = s.request.penalty_per_violation;
        o.throughput_violated = violated;
        outcomes.push_back(o);
      }
      SliceWindowRow row;
      row.window = w;
      row.slice = id;
      for (const ResourceMask& m : masks)
        if (m.slice_id == id) row.mask_cells = m.cells.size();
      row.served_bits = served;
      row.backlog_bits = start_backlog[id] - served;
      row.throughput_violation = violated;
      row.latency_violations = late_packets.count(id) ? late_packets.at(id) : 0;
      report.slice_rows.push_back(row);
    }
    settle_window(report.ledger, outcomes);
  }

  return report;
}

MetricsReport run(const Scenario& sc) { return run_with_seed(sc, sc.seed); }

ReplicateResult replicate(const Scenario& sc,
                          const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ValidationError("replicate: empty seed list");
  ReplicateResult result;
  for (std::uint64_t s : seeds) result.reports.push_back(run_with_seed(sc, s));

  auto aggregate = [&](const std::string& name,
                       const std::function<double(const MetricsReport&)>& f) {
    AggregateStat st;
    double sum = 0.0, sq = 0.0;
    st.min = f(result.reports.front());
    st.max = st.min;
    for (const MetricsReport& r : result.reports) {
      double v = f(r);
      sum += v;
      sq += v * v;
      st.min = std::min(st.min, v);
      st.max = std::max(st.max, v);
    }
    double n = static_cast<double>(result.reports.size());
    st.mean = sum / n;
    double var = std::max(0.0, sq / n - st.mean * st.mean);
    st.stddev = std::sqrt(var);
    result.aggregates[name] = st;
  };

  aggregate("total_served_bits",
            [](const MetricsReport& r) { return r.total_served_bits(); });
  aggregate("net_revenue",
            [](const MetricsReport& r) { return r.ledger.net_revenue(); });
  aggregate("total_revenue",
            [](const MetricsReport& r) { return r.ledger.total_revenue(); });
  aggregate("total_penalties",
            [](const MetricsReport& r) { return r.ledger.total_penalties(); });
  aggregate("uca_cn_messages", [](const MetricsReport& r) {
    return static_cast<double>(r.uca_signaling.cn_messages);
  });
  aggregate("baseline_cn_messages", [](const MetricsReport& r) {
    return static_cast<double>(r.baseline_signaling.cn_messages);
  });
  aggregate("cell_changes", [](const MetricsReport& r) {
    return static_cast<double>(r.cell_changes);
  });
  return result;
}

}  // namespace slicesim
