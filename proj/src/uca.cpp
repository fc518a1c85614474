#include "slicesim/uca.hpp"

#include "slicesim/errors.hpp"

namespace slicesim {

SignalingCounters& SignalingCounters::operator+=(const SignalingCounters& other) {
  ran_messages += other.ran_messages;
  cn_messages += other.cn_messages;
  for (const auto& [k, v] : other.per_event) per_event[k] += v;
  return *this;
}

Uca form_uca(const Ue& ue, const Topology& topology, std::size_t radius_nodes) {
  if (radius_nodes < 1) throw ValidationError("UCA radius must be >= 1");
  std::vector<NodeId> nearest = topology.nearest_k(ue.position, radius_nodes);
  Uca uca;
  uca.ue_id = ue.id;
  uca.nodes.insert(nearest.begin(), nearest.end());
  uca.anchor = nearest.front();
  uca.context_shared = true;
  uca.radius_nodes = radius_nodes;
  if (!uca.nodes.count(uca.anchor))
    throw InvariantViolation("UCA anchor outside node set");
  return uca;
}

SignalingCounters on_cell_change(Uca& uca, const Ue& ue, NodeId new_node,
                                 const Topology& topology,
                                 const UcaCosts& costs) {
  SignalingCounters delta;
  if (uca.nodes.count(new_node)) {
    // intra-UCA: served by any node in the set, CN untouched
    delta.ran_messages += costs.c_intra;
    delta.per_event["intra-uca"] += 1;
  } else {
    // inter-UCA: slide the UCA onto the new node, relocate anchor
    const RadioNode* target = topology.find(new_node);
    if (!target)
      throw ValidationError("cell change to unknown node " +
                            std::to_string(new_node));
    Ue probe = ue;
    probe.position = target->position;
    Uca reformed = form_uca(probe, topology, uca.radius_nodes);
    // recenter on the triggering node even if another is marginally closer
    reformed.nodes.insert(new_node);
    reformed.anchor = new_node;
    uca = reformed;
    delta.ran_messages += costs.reform_cost(uca.radius_nodes);
    delta.cn_messages += costs.c_pathswitch;
    delta.per_event["inter-uca"] += 1;
  }
  if (!uca.nodes.count(uca.anchor))
    throw InvariantViolation("UCA anchor outside node set after cell change");
  return delta;
}

SignalingCounters baseline_handover(const UcaCosts& costs) {
  SignalingCounters delta;
  delta.ran_messages = costs.c_ho_ran;
  delta.cn_messages = costs.c_ho_cn;
  delta.per_event["handover"] = 1;
  return delta;
}

}  // namespace slicesim
