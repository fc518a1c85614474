#ifndef SLICESIM_SCHEDULING_HPP_
#define SLICESIM_SCHEDULING_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "slicesim/grid.hpp"
#include "slicesim/radio.hpp"
#include "slicesim/slices.hpp"

namespace slicesim {

enum class SdmxObjective {
  StaticSplit,
  WeightedFair,
  MaxSpectralEfficiency,
  FairnessWithFloor,
};

// Periodically recurring fixed cell grant for deterministic traffic.
struct Reservation {
  SliceId slice_id = 0;
  std::set<Cell> cells;
  std::uint64_t period_windows = 1;
};

struct SdmxPolicy {
  SdmxObjective objective = SdmxObjective::WeightedFair;
  // StaticSplit shares / WeightedFair weights / FairnessWithFloor weights,
  // keyed by slice id. Missing slices default to weight 1.
  std::map<SliceId, double> weights;
  // FairnessWithFloor guaranteed cell counts per slice.
  std::map<SliceId, std::uint64_t> floors;
  std::vector<Reservation> reservations;
  // Interference-mitigation hook: cells a slice may never be assigned.
  std::map<SliceId, std::set<Cell>> blacklist;
};

// Records a reservation after checking collisions with existing ones.
void reserve_semi_persistent(SdmxPolicy& policy, SliceId slice,
                             const std::set<Cell>& cells,
                             std::uint64_t period_windows);

enum class SliceDiscipline { RoundRobin, ProportionalFair, EarliestDeadlineFirst };

struct SlicePolicy {
  SliceDiscipline discipline = SliceDiscipline::RoundRobin;
  double pf_horizon = 100.0;  // averaging horizon in windows, > 0 for PF
};

// Scheduler-facing view of one slice for one window.
struct SliceDemand {
  SliceId slice_id = 0;
  double backlog_bits = 0.0;
  double priority_weight = 1.0;
  std::uint32_t numerology_id = 0;
  RanOption ran_option = RanOption::Option1;
  // UEs of this slice with their leg sets (single-connectivity: one node).
  std::vector<std::pair<UeId, std::vector<NodeId>>> ues;
};

// se a slice can realize on a cell: best UE, best leg; 0 when the slice has
// no UE with a defined channel entry there.
double slice_best_se(const SliceDemand& slice, const ChannelState& channel,
                     const Cell& cell);

// Largest-remainder apportionment of `total` items by weight, deterministic
// (ties to lowest key). Exposed for the oracle tests.
std::map<SliceId, std::uint64_t> largest_remainder_apportion(
    const std::map<SliceId, double>& weights, std::uint64_t total);

// SDM-X level: per-slice resource masks over the shared grid. Reserved cells
// go to their owners first (every period-th window), the remainder per the
// policy objective. Output masks are pairwise disjoint; only cells in tiles
// matching a slice's numerology are eligible for it.
std::vector<ResourceMask> compute_masks(const ResourceGrid& grid,
                                        const Tiling& tiling,
                                        const std::vector<SliceDemand>& slices,
                                        const ChannelState& channel,
                                        const SdmxPolicy& policy,
                                        std::uint64_t window_index);

struct CellAssignment {
  Cell cell;
  UeId ue_id = 0;
  std::uint32_t flow_id = 0;
  double bits = 0.0;  // bits served from this flow on this cell
};

struct CompletedPacket {
  UeId ue_id = 0;
  std::uint32_t flow_id = 0;
  double arrival_ms = 0.0;
  double bits = 0.0;
};

struct AllocationFragment {
  SliceId slice_id = 0;
  std::uint64_t window_index = 0;
  std::vector<CellAssignment> assignments;
  std::vector<CompletedPacket> completed_packets;

  double total_bits() const;
  double ue_bits(UeId ue) const;
};

// PF average-rate state per UE, carried across windows.
struct PfState {
  std::map<UeId, double> average_bits;  // per-window EWMA, init 1.0
};

// SDM-C level: allocate one slice's flows inside its mask. Flows' backlogs
// and queues are consumed in place; PF averages updated at window end.
// When `priority_order` is non-null (Option 2 final decision), flows are
// served greedily in that order instead of by the discipline.
AllocationFragment schedule_within_mask(
    const SliceDemand& slice, const ResourceMask& mask,
    std::vector<Flow*>& flows, const ChannelState& channel,
    const Tiling& tiling, const std::vector<Numerology>& numerologies,
    const SlicePolicy& policy, PfState& pf_state,
    const std::vector<std::uint32_t>* priority_order = nullptr);

// Tenant pre-schedule for Option 2: priority-ordered flow list.
struct PreSchedule {
  SliceId slice_id = 0;
  std::vector<std::uint32_t> flow_order;  // flow ids, highest priority first
};

struct DemotionEvent {
  SliceId from_slice = 0;
  SliceId to_slice = 0;
  std::uint64_t cells_moved = 0;
};

// Option 2 common MAC: jointly re-allocates the union of the given slices'
// masks by weighted largest-remainder shares capped by demand, honoring each
// tenant's pre-schedule order. Rewrites the masks to the joint result so the
// isolation invariant (allocation inside own mask) is preserved. A slice
// loses cells from its initial mask only when it pre-scheduled beyond its
// weighted share.
std::vector<DemotionEvent> option2_joint_allocate(
    const std::vector<SliceDemand>& slices, std::vector<ResourceMask>& masks,
    const std::vector<PreSchedule>& pre_schedules,
    const ChannelState& channel, const Tiling& tiling,
    const std::vector<Numerology>& numerologies);

std::uint32_t symbols_per_cell(const Tiling& tiling,
                               const std::vector<Numerology>& numerologies,
                               const Cell& cell);

}  // namespace slicesim

#endif
