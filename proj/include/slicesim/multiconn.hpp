#ifndef SLICESIM_MULTICONN_HPP_
#define SLICESIM_MULTICONN_HPP_

#include <cstdint>
#include <vector>

#include "slicesim/radio.hpp"

namespace slicesim {

// Symmetric inter-node transport link.
struct TransportLink {
  NodeId a = 0;
  NodeId b = 0;
  double latency_ms = 0.0;
  double capacity_bps = 0.0;

  bool connects(NodeId x, NodeId y) const {
    return (a == x && b == y) || (a == y && b == x);
  }
};

enum class McAnchor { CommonPdcp, CommonMac };
enum class McMode { Split, Duplicate };

struct McConfig {
  UeId ue_id = 0;
  std::vector<NodeId> legs;  // distinct, >= 1
  McAnchor anchor = McAnchor::CommonPdcp;
  McMode mode = McMode::Split;
  std::vector<double> leg_per;  // per-leg packet error rate, for reliability
};

struct McLimits {
  double mac_latency_limit_ms = 0.25;
  double mac_capacity_floor_bps = 10e9;
};

// CommonMac requires co-sited legs or a qualifying transport link between
// every leg pair; CommonPdcp is always placeable.
const McConfig& validate_anchor(const McConfig& cfg, const Topology& topology,
                                const std::vector<TransportLink>& transport,
                                const McLimits& limits);

// Split mode: total delivered bits across legs.
double aggregate_throughput(const std::vector<double>& per_leg_bits);

// Duplicate mode: effective PER under independent per-leg loss.
double duplicate_reliability(const std::vector<double>& per_leg_per);

struct CoordinationCapability {
  bool joint_scheduling = false;     // one scheduler sees all legs' cells
  bool anchor_reassembly = false;    // per-window reassembly at the anchor
};

CoordinationCapability coordination_bonus(const McConfig& cfg);

// Extra latency the anchor adds to packets: max per-leg transport latency for
// CommonPdcp, zero for CommonMac (co-sited by validation).
double anchor_latency_ms(const McConfig& cfg, const Topology& topology,
                         const std::vector<TransportLink>& transport);

}  // namespace slicesim

#endif
