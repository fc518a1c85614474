#ifndef SLICESIM_UCA_HPP_
#define SLICESIM_UCA_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "slicesim/radio.hpp"

namespace slicesim {

// User-Centric Connection Area: a per-UE node set with an anchor terminating
// the CN bearer; intra-set mobility is hidden from the CN.
struct Uca {
  UeId ue_id = 0;
  std::set<NodeId> nodes;
  NodeId anchor = 0;
  bool context_shared = true;
  std::size_t radius_nodes = 1;  // k used at formation, reused on re-formation
};

struct SignalingCounters {
  std::uint64_t ran_messages = 0;
  std::uint64_t cn_messages = 0;
  std::map<std::string, std::uint64_t> per_event;

  SignalingCounters& operator+=(const SignalingCounters& other);
};

struct UcaCosts {
  std::uint64_t c_intra = 1;       // RAN messages per intra-UCA move
  std::uint64_t c_reform = 0;      // 0 means k+2 (default), else fixed
  std::uint64_t c_pathswitch = 2;  // CN messages per anchor relocation
  std::uint64_t c_ho_ran = 4;      // baseline handover RAN cost
  std::uint64_t c_ho_cn = 2;       // baseline handover CN cost

  std::uint64_t reform_cost(std::size_t k) const {
    return c_reform != 0 ? c_reform : static_cast<std::uint64_t>(k) + 2;
  }
};

// nodes = k nearest to the UE, anchor = nearest; ties by node id.
Uca form_uca(const Ue& ue, const Topology& topology, std::size_t radius_nodes);

// Intra-UCA move: RAN-only cost, anchor unchanged. Inter-UCA move: re-form
// around the new node, anchor relocation and CN path switch.
SignalingCounters on_cell_change(Uca& uca, const Ue& ue, NodeId new_node,
                                 const Topology& topology,
                                 const UcaCosts& costs);

// CN-anchored handover baseline: every cell change pays RAN + CN cost.
SignalingCounters baseline_handover(const UcaCosts& costs);

}  // namespace slicesim

#endif
