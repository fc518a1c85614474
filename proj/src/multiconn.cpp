#include "slicesim/multiconn.hpp"

#include <algorithm>
#include <set>

#include "slicesim/errors.hpp"

namespace slicesim {

namespace {

const TransportLink* find_link(const std::vector<TransportLink>& transport,
                               NodeId a, NodeId b) {
  for (const TransportLink& l : transport)
    if (l.connects(a, b)) return &l;
  return nullptr;
}

}  // namespace

const McConfig& validate_anchor(const McConfig& cfg, const Topology& topology,
                                const std::vector<TransportLink>& transport,
                                const McLimits& limits) {
  if (cfg.legs.empty())
    throw ValidationError("MC config for UE " + std::to_string(cfg.ue_id) +
                          ": empty leg set");
  std::set<NodeId> distinct(cfg.legs.begin(), cfg.legs.end());
  if (distinct.size() != cfg.legs.size())
    throw ValidationError("MC config for UE " + std::to_string(cfg.ue_id) +
                          ": duplicate legs");
  for (NodeId n : cfg.legs)
    if (!topology.find(n))
      throw ValidationError("MC config for UE " + std::to_string(cfg.ue_id) +
                            ": unknown node " + std::to_string(n));

  if (cfg.anchor == McAnchor::CommonPdcp) return cfg;

  // CommonMac: co-sited, or every pair bridged by a qualifying link
  for (std::size_t i = 0; i < cfg.legs.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.legs.size(); ++j) {
      const RadioNode* a = topology.find(cfg.legs[i]);
      const RadioNode* b = topology.find(cfg.legs[j]);
      if (a->site_id == b->site_id) continue;
      const TransportLink* link = find_link(transport, a->id, b->id);
      if (!link || link->latency_ms > limits.mac_latency_limit_ms ||
          link->capacity_bps < limits.mac_capacity_floor_bps)
        throw ValidationError(
            "common-MAC anchor infeasible for UE " + std::to_string(cfg.ue_id) +
            ": legs " + std::to_string(a->id) + " and " + std::to_string(b->id) +
            " are neither co-sited nor bridged by a qualifying transport link");
    }
  }
  return cfg;
}

double aggregate_throughput(const std::vector<double>& per_leg_bits) {
  double total = 0.0;
  for (double b : per_leg_bits) {
    if (b < 0.0) throw ValidationError("negative per-leg throughput");
    total += b;
  }
  return total;
}

double duplicate_reliability(const std::vector<double>& per_leg_per) {
  if (per_leg_per.empty())
    throw ValidationError("duplicate_reliability: empty leg set");
  double eff = 1.0;
  for (double p : per_leg_per) {
    if (p < 0.0 || p > 1.0)
      throw ValidationError("per-leg PER out of [0,1]");
    eff *= p;
  }
  return eff;
}

CoordinationCapability coordination_bonus(const McConfig& cfg) {
  CoordinationCapability cap;
  cap.joint_scheduling = cfg.anchor == McAnchor::CommonMac;
  cap.anchor_reassembly = cfg.anchor == McAnchor::CommonPdcp;
  return cap;
}

double anchor_latency_ms(const McConfig& cfg, const Topology& topology,
                         const std::vector<TransportLink>& transport) {
  if (cfg.anchor == McAnchor::CommonMac || cfg.legs.size() < 2) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.legs.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.legs.size(); ++j) {
      const RadioNode* a = topology.find(cfg.legs[i]);
      const RadioNode* b = topology.find(cfg.legs[j]);
      if (a && b && a->site_id == b->site_id) continue;
      if (const TransportLink* l = find_link(transport, cfg.legs[i], cfg.legs[j]))
        worst = std::max(worst, l->latency_ms);
    }
  }
  return worst;
}

}  // namespace slicesim
