#include "slicesim/radio.hpp"

#include <algorithm>
#include <cmath>

#include "slicesim/errors.hpp"

namespace slicesim {

double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

const RadioNode* Topology::find(NodeId id) const {
  for (const RadioNode& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

NodeId Topology::nearest(const Position& p) const {
  if (nodes.empty()) throw ValidationError("topology has no nodes");
  const RadioNode* best = &nodes.front();
  double best_d = distance_m(p, best->position);
  for (const RadioNode& n : nodes) {
    double d = distance_m(p, n.position);
    if (d < best_d || (d == best_d && n.id < best->id)) {
      best = &n;
      best_d = d;
    }
  }
  return best->id;
}

std::vector<NodeId> Topology::nearest_k(const Position& p, std::size_t k) const {
  if (k > nodes.size())
    throw ValidationError("nearest_k: k exceeds topology size");
  std::vector<const RadioNode*> sorted;
  sorted.reserve(nodes.size());
  for (const RadioNode& n : nodes) sorted.push_back(&n);
  std::sort(sorted.begin(), sorted.end(),
            [&](const RadioNode* a, const RadioNode* b) {
              double da = distance_m(p, a->position);
              double db = distance_m(p, b->position);
              if (da != db) return da < db;
              return a->id < b->id;
            });
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(sorted[i]->id);
  return out;
}

double spectral_efficiency_from_sinr(double sinr_db, double se_cap) {
  double sinr = std::pow(10.0, sinr_db / 10.0);
  return std::min(std::log2(1.0 + sinr), se_cap);
}

void ChannelState::set_sinr_db(UeId ue, NodeId node, std::uint32_t rb,
                               double sinr_db, double se_cap) {
  entries_[{ue, node, rb}] = {sinr_db,
                              spectral_efficiency_from_sinr(sinr_db, se_cap)};
}

void ChannelState::set_se(UeId ue, NodeId node, std::uint32_t rb, double se) {
  // inverse of the se mapping, clamped below the cap
  double sinr = std::pow(2.0, se) - 1.0;
  double sinr_db = sinr > 0.0 ? 10.0 * std::log10(sinr) : -300.0;
  entries_[{ue, node, rb}] = {sinr_db, se};
}

bool ChannelState::defined(UeId ue, NodeId node, std::uint32_t rb) const {
  return entries_.count({ue, node, rb}) > 0;
}

double ChannelState::sinr_db(UeId ue, NodeId node, std::uint32_t rb) const {
  auto it = entries_.find({ue, node, rb});
  if (it == entries_.end())
    throw ValidationError("undefined channel entry (ue=" + std::to_string(ue) +
                          ", node=" + std::to_string(node) +
                          ", rb=" + std::to_string(rb) + ")");
  return it->second.sinr_db;
}

double ChannelState::se(UeId ue, NodeId node, std::uint32_t rb) const {
  auto it = entries_.find({ue, node, rb});
  if (it == entries_.end())
    throw ValidationError("undefined channel entry (ue=" + std::to_string(ue) +
                          ", node=" + std::to_string(node) +
                          ", rb=" + std::to_string(rb) + ")");
  return it->second.se;
}

double ChannelState::best_se(UeId ue, const std::vector<NodeId>& legs,
                             std::uint32_t rb) const {
  double best = 0.0;
  for (NodeId n : legs) best = std::max(best, se(ue, n, rb));
  return best;
}

NodeId ChannelState::best_leg(UeId ue, const std::vector<NodeId>& legs,
                              std::uint32_t rb) const {
  if (legs.empty()) throw ValidationError("best_leg: empty leg set");
  NodeId best = legs.front();
  double best_se_v = se(ue, best, rb);
  for (NodeId n : legs) {
    double v = se(ue, n, rb);
    if (v > best_se_v || (v == best_se_v && n < best)) {
      best = n;
      best_se_v = v;
    }
  }
  return best;
}

ChannelState step_channel(const std::vector<Ue>& ues, const Topology& topology,
                          std::uint32_t n_rb, const ChannelParams& params,
                          RngStream& rng) {
  ChannelState state;
  for (const Ue& ue : ues) {
    for (const RadioNode& node : topology.nodes) {
      for (std::uint32_t rb = 0; rb < n_rb; ++rb) {
        if (params.mode == ChannelParams::Mode::ConstantSe) {
          state.set_se(ue.id, node.id, rb, params.constant_se);
          continue;
        }
        double d = std::max(distance_m(ue.position, node.position), 1.0);
        double pl_db = 10.0 * params.pathloss_exponent * std::log10(d);
        double fading_db =
            params.fading_stddev_db > 0.0
                ? rng.normal(0.0, params.fading_stddev_db)
                : 0.0;
        state.set_sinr_db(ue.id, node.id, rb,
                          params.ref_sinr_db - pl_db + fading_db,
                          params.se_cap);
      }
    }
  }
  return state;
}

void generate_traffic(std::vector<Flow>& flows, double now_ms, double window_ms,
                      RngStream& rng) {
  for (Flow& f : flows) {
    switch (f.model.kind) {
      case TrafficModelKind::FullBuffer:
        f.backlog_bits = kFullBufferBits;
        break;
      case TrafficModelKind::PoissonPackets: {
        double lambda = f.model.rate_pkts_per_s * window_ms / 1000.0;
        std::uint64_t n = rng.poisson(lambda);
        for (std::uint64_t i = 0; i < n; ++i) {
          // uniform arrival instants, sorted for FIFO deadline order
          f.queue.push_back({now_ms + rng.uniform() * window_ms,
                             f.model.packet_bits, f.model.packet_bits});
          f.backlog_bits += f.model.packet_bits;
        }
        std::sort(f.queue.begin(), f.queue.end(),
                  [](const Packet& a, const Packet& b) {
                    return a.arrival_ms < b.arrival_ms;
                  });
        break;
      }
      case TrafficModelKind::Periodic: {
        if (f.model.period_ms <= 0.0)
          throw ValidationError("periodic flow with non-positive period");
        // packets with offset + k*period in [now, now + window)
        double t0 = f.model.offset_ms;
        double lo = now_ms, hi = now_ms + window_ms;
        double k = std::ceil((lo - t0) / f.model.period_ms);
        if (k < 0.0) k = 0.0;
        for (double t = t0 + k * f.model.period_ms; t < hi;
             t += f.model.period_ms) {
          if (t < lo) continue;
          f.queue.push_back({t, f.model.packet_bits, f.model.packet_bits});
          f.backlog_bits += f.model.packet_bits;
        }
        break;
      }
    }
  }
}

std::vector<CellChange> move_ues(std::vector<Ue>& ues, double dt_ms,
                                 const Topology& topology, double area_x,
                                 double area_y, RngStream& rng) {
  if (dt_ms <= 0.0) throw ValidationError("move_ues: dt_ms must be > 0");
  std::vector<CellChange> events;
  for (Ue& ue : ues) {
    if (ue.speed_mps <= 0.0) continue;
    NodeId before = topology.nearest(ue.position);
    double remaining = ue.speed_mps * dt_ms / 1000.0;
    while (remaining > 0.0) {
      if (!ue.waypoint)
        ue.waypoint = Position{rng.uniform(0.0, area_x), rng.uniform(0.0, area_y)};
      double d = distance_m(ue.position, *ue.waypoint);
      if (d <= remaining) {
        ue.position = *ue.waypoint;
        ue.waypoint.reset();
        remaining -= d;
        if (d == 0.0) break;  // degenerate waypoint on current position
      } else {
        double frac = remaining / d;
        ue.position.x += (ue.waypoint->x - ue.position.x) * frac;
        ue.position.y += (ue.waypoint->y - ue.position.y) * frac;
        remaining = 0.0;
      }
    }
    NodeId after = topology.nearest(ue.position);
    if (after != before) {
      events.push_back({ue.id, before, after});
      if (ue.serving_nodes.size() == 1) ue.serving_nodes = {after};
    }
  }
  return events;
}

}  // namespace slicesim
