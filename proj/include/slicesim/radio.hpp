#ifndef SLICESIM_RADIO_HPP_
#define SLICESIM_RADIO_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "slicesim/grid.hpp"
#include "slicesim/rng.hpp"

namespace slicesim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(const Position& a, const Position& b);

struct RadioNode {
  NodeId id = 0;
  Position position;
  std::uint32_t site_id = 0;  // co-location group
  bool edge_cloud = false;
};

struct Topology {
  std::vector<RadioNode> nodes;

  const RadioNode* find(NodeId id) const;
  // Lowest node id wins distance ties.
  NodeId nearest(const Position& p) const;
  std::vector<NodeId> nearest_k(const Position& p, std::size_t k) const;
};

struct Ue {
  UeId id = 0;
  SliceId slice_id = 0;
  Position position;
  double speed_mps = 0.0;
  std::vector<NodeId> serving_nodes;  // nonempty

  // random-waypoint target; refreshed when reached
  std::optional<Position> waypoint;
};

enum class TrafficModelKind { FullBuffer, PoissonPackets, Periodic };

struct TrafficModel {
  TrafficModelKind kind = TrafficModelKind::FullBuffer;
  double rate_pkts_per_s = 0.0;  // Poisson
  double packet_bits = 0.0;      // Poisson / Periodic
  double period_ms = 0.0;        // Periodic
  double offset_ms = 0.0;        // Periodic start phase
};

struct Packet {
  double arrival_ms = 0.0;
  double bits = 0.0;
  double remaining = 0.0;  // unserved part
  bool counted_late = false;
};

// Surrogate backlog for full-buffer flows.
inline constexpr double kFullBufferBits = 1e15;

struct Flow {
  std::uint32_t id = 0;
  UeId ue_id = 0;
  TrafficModel model;
  double backlog_bits = 0.0;
  std::deque<Packet> queue;  // deadline tracking for finite models

  bool is_full_buffer() const {
    return model.kind == TrafficModelKind::FullBuffer;
  }
};

struct ChannelParams {
  enum class Mode { LogDistance, ConstantSe };
  Mode mode = Mode::LogDistance;
  double constant_se = 2.0;       // ConstantSe mode
  double ref_sinr_db = 30.0;      // SINR at 1 m before fading
  double pathloss_exponent = 3.5;
  double fading_stddev_db = 4.0;  // per-RB block fading, redrawn each window
  double se_cap = 6.0;            // bits/symbol
};

// Per (ue, node, rb) link quality for one window.
class ChannelState {
 public:
  void set_sinr_db(UeId ue, NodeId node, std::uint32_t rb, double sinr_db,
                   double se_cap);
  void set_se(UeId ue, NodeId node, std::uint32_t rb, double se);

  // Throws ValidationError when the entry is undefined.
  double sinr_db(UeId ue, NodeId node, std::uint32_t rb) const;
  double se(UeId ue, NodeId node, std::uint32_t rb) const;
  bool defined(UeId ue, NodeId node, std::uint32_t rb) const;

  // Best spectral efficiency over a leg set; used for MC-aware scheduling.
  double best_se(UeId ue, const std::vector<NodeId>& legs, std::uint32_t rb) const;
  NodeId best_leg(UeId ue, const std::vector<NodeId>& legs, std::uint32_t rb) const;

 private:
  struct Entry {
    double sinr_db = 0.0;
    double se = 0.0;
  };
  std::map<std::tuple<UeId, NodeId, std::uint32_t>, Entry> entries_;
};

double spectral_efficiency_from_sinr(double sinr_db, double se_cap);

// Log-distance pathloss plus per-RB fading redrawn every window; or a flat
// constant-se table for analytic scenarios. Deterministic given rng state.
ChannelState step_channel(const std::vector<Ue>& ues, const Topology& topology,
                          std::uint32_t n_rb, const ChannelParams& params,
                          RngStream& rng);

// Appends the window's arrivals [now_ms, now_ms + window_ms) to each flow's
// queue/backlog. Full-buffer flows are topped back up to the surrogate.
void generate_traffic(std::vector<Flow>& flows, double now_ms, double window_ms,
                      RngStream& rng);

struct CellChange {
  UeId ue_id = 0;
  NodeId from = 0;
  NodeId to = 0;
};

// Random-waypoint step inside the bounding box [0,area_x]x[0,area_y]; emits a
// cell-change event whenever a UE's nearest node changes.
std::vector<CellChange> move_ues(std::vector<Ue>& ues, double dt_ms,
                                 const Topology& topology, double area_x,
                                 double area_y, RngStream& rng);

}  // namespace slicesim

#endif
