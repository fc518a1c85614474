#include "slicesim/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicesim/errors.hpp"

namespace slicesim {

namespace {

const SliceDemand* find_slice(const std::vector<SliceDemand>& slices,
                              SliceId id) {
  for (const SliceDemand& s : slices)
    if (s.slice_id == id) return &s;
  return nullptr;
}

bool cell_eligible(const SliceDemand& slice, const Cell& cell,
                   const Tiling& tiling, const SdmxPolicy& policy) {
  if (tiling.numerology_of(cell) != slice.numerology_id) return false;
  auto it = policy.blacklist.find(slice.slice_id);
  if (it != policy.blacklist.end() && it->second.count(cell)) return false;
  return true;
}

}  // namespace

std::uint32_t symbols_per_cell(const Tiling& tiling,
                               const std::vector<Numerology>& numerologies,
                               const Cell& cell) {
  std::uint32_t num_id = tiling.numerology_of(cell);
  for (const Numerology& n : numerologies)
    if (n.id == num_id) return n.symbols_per_cell;
  throw ValidationError("unknown numerology id " + std::to_string(num_id));
}

double slice_best_se(const SliceDemand& slice, const ChannelState& channel,
                     const Cell& cell) {
  double best = 0.0;
  for (const auto& [ue, legs] : slice.ues) {
    for (NodeId leg : legs) {
      if (channel.defined(ue, leg, cell.rb))
        best = std::max(best, channel.se(ue, leg, cell.rb));
    }
  }
  return best;
}

std::map<SliceId, std::uint64_t> largest_remainder_apportion(
    const std::map<SliceId, double>& weights, std::uint64_t total) {
  std::map<SliceId, std::uint64_t> out;
  double wsum = 0.0;
  for (const auto& [id, w] : weights) {
    if (w <= 0.0)
      throw ValidationError("apportionment weight must be > 0 (slice " +
                            std::to_string(id) + ")");
    wsum += w;
  }
  if (weights.empty() || total == 0) {
    for (const auto& [id, w] : weights) out[id] = 0;
    return out;
  }
  std::uint64_t assigned = 0;
  std::vector<std::pair<double, SliceId>> remainders;
  for (const auto& [id, w] : weights) {
    double quota = static_cast<double>(total) * w / wsum;
    std::uint64_t base = static_cast<std::uint64_t>(std::floor(quota));
    out[id] = base;
    assigned += base;
    remainders.push_back({quota - static_cast<double>(base), id});
  }
  // largest remainder first, ties to lowest slice id
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  std::uint64_t leftover = total - assigned;
  for (std::size_t i = 0; i < remainders.size() && leftover > 0; ++i) {
    ++out[remainders[i].second];
    --leftover;
  }
  return out;
}

void reserve_semi_persistent(SdmxPolicy& policy, SliceId slice,
                             const std::set<Cell>& cells,
                             std::uint64_t period_windows) {
  if (period_windows < 1)
    throw ValidationError("reservation period must be >= 1");
  if (cells.empty()) throw ValidationError("empty reservation");
  for (const Reservation& r : policy.reservations) {
    for (const Cell& c : cells) {
      if (r.cells.count(c))
        throw ValidationError(
            "reservation collision at cell (" + std::to_string(c.slot) + "," +
            std::to_string(c.rb) + ") with slice " + std::to_string(r.slice_id));
    }
  }
  policy.reservations.push_back({slice, cells, period_windows});
}

std::vector<ResourceMask> compute_masks(const ResourceGrid& grid,
                                        const Tiling& tiling,
                                        const std::vector<SliceDemand>& slices,
                                        const ChannelState& channel,
                                        const SdmxPolicy& policy,
                                        std::uint64_t window_index) {
  if (policy.objective == SdmxObjective::FairnessWithFloor) {
    std::uint64_t floor_total = 0;
    for (const auto& [id, f] : policy.floors) floor_total += f;
    if (floor_total > grid.cell_count())
      throw ValidationError("guaranteed floors exceed grid capacity");
  }

  std::map<SliceId, ResourceMask> masks;
  for (const SliceDemand& s : slices)
    masks[s.slice_id] = ResourceMask{s.slice_id, window_index, {}};

  std::set<Cell> taken;
  auto grant = [&](SliceId id, const Cell& c) {
    masks[id].cells.insert(c);
    taken.insert(c);
  };

  // reserved cells first
  for (const Reservation& r : policy.reservations) {
    if (window_index % r.period_windows != 0) continue;
    if (!find_slice(slices, r.slice_id))
      throw ValidationError("reservation for unknown slice " +
                            std::to_string(r.slice_id));
    for (const Cell& c : r.cells) {
      if (!grid.contains(c))
        throw ValidationError("reserved cell outside grid");
      grant(r.slice_id, c);
    }
  }

  std::vector<Cell> free_cells;
  for (const Cell& c : grid.all_cells())
    if (!taken.count(c)) free_cells.push_back(c);

  auto weight_of = [&](SliceId id) {
    auto it = policy.weights.find(id);
    return it == policy.weights.end() ? 1.0 : it->second;
  };

  std::vector<const SliceDemand*> demanding;
  for (const SliceDemand& s : slices)
    if (s.backlog_bits > 0.0) demanding.push_back(&s);

  // cells a slice may use, best-se first (ties: lowest (slot, rb))
  auto pick_order = [&](const SliceDemand& s) {
    std::vector<Cell> order;
    for (const Cell& c : free_cells)
      if (cell_eligible(s, c, tiling, policy)) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](const Cell& a, const Cell& b) {
                       double sa = slice_best_se(s, channel, a);
                       double sb = slice_best_se(s, channel, b);
                       if (sa != sb) return sa > sb;
                       return a < b;
                     });
    return order;
  };

  auto take_quota = [&](const SliceDemand& s, std::uint64_t quota) {
    std::uint64_t got = 0;
    for (const Cell& c : pick_order(s)) {
      if (got >= quota) break;
      if (taken.count(c)) continue;
      grant(s.slice_id, c);
      ++got;
    }
    return got;
  };

  auto weighted_fair = [&](const std::vector<const SliceDemand*>& group) {
    if (group.empty()) return;
    std::uint64_t n_free = 0;
    for (const Cell& c : free_cells)
      if (!taken.count(c)) ++n_free;
    std::map<SliceId, double> w;
    for (const SliceDemand* s : group) w[s->slice_id] = weight_of(s->slice_id);
    auto quota = largest_remainder_apportion(w, n_free);
    for (const SliceDemand* s : group) take_quota(*s, quota[s->slice_id]);
    // redistribute cells a slice could not use (ineligible tiles)
    bool progress = true;
    while (progress) {
      progress = false;
      for (const Cell& c : free_cells) {
        if (taken.count(c)) continue;
        for (const SliceDemand* s : group) {
          if (cell_eligible(*s, c, tiling, policy)) {
            grant(s->slice_id, c);
            progress = true;
            break;
          }
        }
      }
    }
  };

  switch (policy.objective) {
    case SdmxObjective::StaticSplit: {
      // fixed contiguous shares regardless of demand
      std::vector<Cell> remaining;
      for (const Cell& c : free_cells)
        if (!taken.count(c)) remaining.push_back(c);
      std::map<SliceId, double> w;
      for (const SliceDemand& s : slices) w[s.slice_id] = weight_of(s.slice_id);
      auto quota = largest_remainder_apportion(w, remaining.size());
      std::size_t pos = 0;
      for (const SliceDemand& s : slices) {  // ascending declaration order
        std::uint64_t q = quota[s.slice_id];
        for (std::uint64_t i = 0; i < q && pos < remaining.size(); ++i, ++pos) {
          const Cell& c = remaining[pos];
          if (cell_eligible(s, c, tiling, policy)) grant(s.slice_id, c);
        }
      }
      break;
    }
    case SdmxObjective::WeightedFair:
      weighted_fair(demanding);
      break;
    case SdmxObjective::MaxSpectralEfficiency: {
      for (const Cell& c : free_cells) {
        if (taken.count(c)) continue;
        const SliceDemand* best = nullptr;
        double best_se = -1.0;
        for (const SliceDemand* s : demanding) {
          if (!cell_eligible(*s, c, tiling, policy)) continue;
          double se = slice_best_se(*s, channel, c);
          if (se > best_se ||
              (se == best_se && best && s->slice_id < best->slice_id)) {
            best = s;
            best_se = se;
          }
        }
        if (best) grant(best->slice_id, c);
      }
      break;
    }
    case SdmxObjective::FairnessWithFloor: {
      for (const SliceDemand* s : demanding) {
        auto it = policy.floors.find(s->slice_id);
        if (it != policy.floors.end()) take_quota(*s, it->second);
      }
      weighted_fair(demanding);
      break;
    }
  }

  std::vector<ResourceMask> out;
  for (const SliceDemand& s : slices) out.push_back(std::move(masks[s.slice_id]));
  return out;
}

double AllocationFragment::total_bits() const {
  double t = 0.0;
  for (const CellAssignment& a : assignments) t += a.bits;
  return t;
}

double AllocationFragment::ue_bits(UeId ue) const {
  double t = 0.0;
  for (const CellAssignment& a : assignments)
    if (a.ue_id == ue) t += a.bits;
  return t;
}

namespace {

// serve `bits` from a flow: shrink backlog and pop completed packets
double serve_flow(Flow& f, double bits, UeId ue,
                  std::vector<CompletedPacket>& completed) {
  double served = std::min(bits, f.backlog_bits);
  f.backlog_bits -= served;
  double left = served;
  while (left > 0.0 && !f.queue.empty()) {
    Packet& head = f.queue.front();
    if (head.remaining <= left) {
      left -= head.remaining;
      completed.push_back({ue, f.id, head.arrival_ms, head.bits});
      f.queue.pop_front();
    } else {
      head.remaining -= left;
      left = 0.0;
    }
  }
  return served;
}

}  // namespace

AllocationFragment schedule_within_mask(
    const SliceDemand& slice, const ResourceMask& mask,
    std::vector<Flow*>& flows, const ChannelState& channel,
    const Tiling& tiling, const std::vector<Numerology>& numerologies,
    const SlicePolicy& policy, PfState& pf_state,
    const std::vector<std::uint32_t>* priority_order) {
  if (mask.slice_id != slice.slice_id)
    throw ValidationError("mask belongs to slice " +
                          std::to_string(mask.slice_id) + ", not " +
                          std::to_string(slice.slice_id));
  if (policy.discipline == SliceDiscipline::ProportionalFair &&
      policy.pf_horizon <= 0.0)
    throw ValidationError("PF horizon must be > 0");

  AllocationFragment frag;
  frag.slice_id = slice.slice_id;
  frag.window_index = mask.window_index;

  // deterministic flow order: (ue id, flow id)
  std::vector<Flow*> ordered = flows;
  std::sort(ordered.begin(), ordered.end(), [](const Flow* a, const Flow* b) {
    if (a->ue_id != b->ue_id) return a->ue_id < b->ue_id;
    return a->id < b->id;
  });

  auto legs_of = [&](UeId ue) -> const std::vector<NodeId>& {
    for (const auto& [id, legs] : slice.ues)
      if (id == ue) return legs;
    throw ValidationError("flow for UE " + std::to_string(ue) +
                          " outside slice " + std::to_string(slice.slice_id));
  };

  auto cell_bits = [&](UeId ue, const Cell& c) {
    return channel.best_se(ue, legs_of(ue), c.rb) *
           symbols_per_cell(tiling, numerologies, c);
  };

  std::map<UeId, double> window_served;
  for (const auto& [ue, legs] : slice.ues) window_served[ue] = 0.0;

  auto assign = [&](Flow* f, const Cell& c) {
    double bits = serve_flow(*f, cell_bits(f->ue_id, c), f->ue_id,
                             frag.completed_packets);
    frag.assignments.push_back({c, f->ue_id, f->id, bits});
    window_served[f->ue_id] += bits;
  };

  std::vector<Cell> cells(mask.cells.begin(), mask.cells.end());

  if (priority_order) {
    // Option 2 final decision: strict tenant pre-schedule order
    for (const Cell& c : cells) {
      Flow* pick = nullptr;
      for (std::uint32_t fid : *priority_order) {
        for (Flow* f : ordered)
          if (f->id == fid && f->backlog_bits > 0.0) {
            pick = f;
            break;
          }
        if (pick) break;
      }
      if (!pick) break;
      assign(pick, c);
    }
  } else {
    switch (policy.discipline) {
      case SliceDiscipline::RoundRobin: {
        std::size_t cursor = 0;
        for (const Cell& c : cells) {
          Flow* pick = nullptr;
          for (std::size_t i = 0; i < ordered.size(); ++i) {
            Flow* f = ordered[(cursor + i) % ordered.size()];
            if (f->backlog_bits > 0.0) {
              pick = f;
              cursor = (cursor + i + 1) % ordered.size();
              break;
            }
          }
          if (!pick) break;
          assign(pick, c);
        }
        break;
      }
      case SliceDiscipline::ProportionalFair: {
        for (const Cell& c : cells) {
          Flow* pick = nullptr;
          double best_metric = -1.0;
          for (Flow* f : ordered) {
            if (f->backlog_bits <= 0.0) continue;
            double avg = pf_state.average_bits.count(f->ue_id)
                             ? pf_state.average_bits.at(f->ue_id)
                             : 1.0;
            double metric = cell_bits(f->ue_id, c) / avg;
            if (metric > best_metric) {  // ties stay with earlier (ue, flow)
              best_metric = metric;
              pick = f;
            }
          }
          if (!pick) break;
          assign(pick, c);
        }
        break;
      }
      case SliceDiscipline::EarliestDeadlineFirst: {
        for (const Cell& c : cells) {
          Flow* pick = nullptr;
          double best_deadline = std::numeric_limits<double>::infinity();
          for (Flow* f : ordered) {
            if (f->backlog_bits <= 0.0) continue;
            double deadline = f->queue.empty()
                                  ? std::numeric_limits<double>::infinity()
                                  : f->queue.front().arrival_ms;
            if (!pick || deadline < best_deadline) {  // ties: earlier (ue, flow)
              best_deadline = deadline;
              pick = f;
            }
          }
          if (!pick) break;
          assign(pick, c);
        }
        break;
      }
    }
  }

  // PF average update (per-window EWMA with the configured horizon)
  if (policy.discipline == SliceDiscipline::ProportionalFair) {
    double alpha = 1.0 / policy.pf_horizon;
    for (const auto& [ue, served] : window_served) {
      double avg = pf_state.average_bits.count(ue)
                       ? pf_state.average_bits.at(ue)
                       : 1.0;
      pf_state.average_bits[ue] = (1.0 - alpha) * avg + alpha * served;
    }
  }
  return frag;
}

std::vector<DemotionEvent> option2_joint_allocate(
    const std::vector<SliceDemand>& slices, std::vector<ResourceMask>& masks,
    const std::vector<PreSchedule>& pre_schedules,
    const ChannelState& channel, const Tiling& tiling,
    const std::vector<Numerology>& numerologies) {
  if (slices.empty()) return {};
  for (const SliceDemand& s : slices) {
    bool found = false;
    for (const PreSchedule& p : pre_schedules)
      if (p.slice_id == s.slice_id) found = true;
    if (!found)
      throw ValidationError("missing pre-schedule for Option 2 slice " +
                            std::to_string(s.slice_id));
  }

  // pool: union of the participating slices' masks, with prior ownership
  std::map<Cell, SliceId> old_owner;
  std::vector<Cell> pool;
  for (ResourceMask& m : masks) {
    for (const Cell& c : m.cells) {
      old_owner[c] = m.slice_id;
      pool.push_back(c);
    }
  }
  std::sort(pool.begin(), pool.end());

  // demand in cells: greedy best-cells-first accumulation against backlog
  auto demand_cells = [&](const SliceDemand& s) -> std::uint64_t {
    if (s.backlog_bits <= 0.0) return 0;
    std::vector<Cell> order = pool;
    std::stable_sort(order.begin(), order.end(),
                     [&](const Cell& a, const Cell& b) {
                       double sa = slice_best_se(s, channel, a);
                       double sb = slice_best_se(s, channel, b);
                       if (sa != sb) return sa > sb;
                       return a < b;
                     });
    double acc = 0.0;
    std::uint64_t n = 0;
    for (const Cell& c : order) {
      if (acc >= s.backlog_bits) break;
      acc += slice_best_se(s, channel, c) *
             symbols_per_cell(tiling, numerologies, c);
      ++n;
    }
    return n;
  };

  std::map<SliceId, std::uint64_t> demand, target, initial;
  std::map<SliceId, double> weights;
  for (const SliceDemand& s : slices) {
    demand[s.slice_id] = demand_cells(s);
    target[s.slice_id] = 0;
    weights[s.slice_id] = s.priority_weight;
  }
  for (const auto& [c, owner] : old_owner) ++initial[owner];

  // water-fill weighted shares, capped by demand
  std::uint64_t remaining = pool.size();
  std::map<SliceId, double> unsat = weights;
  for (auto it = unsat.begin(); it != unsat.end();)
    it = demand[it->first] == 0 ? unsat.erase(it) : std::next(it);
  while (remaining > 0 && !unsat.empty()) {
    auto quota = largest_remainder_apportion(unsat, remaining);
    bool progress = false;
    for (auto it = unsat.begin(); it != unsat.end();) {
      SliceId id = it->first;
      std::uint64_t give = std::min(quota[id], demand[id] - target[id]);
      if (give > 0) {
        target[id] += give;
        remaining -= give;
        progress = true;
      }
      it = target[id] >= demand[id] ? unsat.erase(it) : std::next(it);
    }
    if (!progress) break;
  }

  // rebuild masks: slices pick their target counts best-se-first, ascending id
  std::map<Cell, SliceId> new_owner;
  std::set<Cell> taken;
  std::vector<const SliceDemand*> by_id;
  for (const SliceDemand& s : slices) by_id.push_back(&s);
  std::sort(by_id.begin(), by_id.end(),
            [](const SliceDemand* a, const SliceDemand* b) {
              return a->slice_id < b->slice_id;
            });
  for (const SliceDemand* s : by_id) {
    std::vector<Cell> order = pool;
    std::stable_sort(order.begin(), order.end(),
                     [&](const Cell& a, const Cell& b) {
                       double sa = slice_best_se(*s, channel, a);
                       double sb = slice_best_se(*s, channel, b);
                       if (sa != sb) return sa > sb;
                       return a < b;
                     });
    std::uint64_t got = 0;
    for (const Cell& c : order) {
      if (got >= target[s->slice_id]) break;
      if (taken.count(c)) continue;
      taken.insert(c);
      new_owner[c] = s->slice_id;
      ++got;
    }
  }

  for (ResourceMask& m : masks) {
    m.cells.clear();
    for (const auto& [c, owner] : new_owner)
      if (owner == m.slice_id) m.cells.insert(c);
  }

  // demotions: a slice whose final count shrank relative to its initial mask
  std::map<std::pair<SliceId, SliceId>, std::uint64_t> moved;
  for (const auto& [c, owner] : old_owner) {
    auto it = new_owner.find(c);
    SliceId now = it == new_owner.end() ? owner : it->second;
    if (now != owner) ++moved[{owner, now}];
  }
  std::vector<DemotionEvent> events;
  for (const auto& [pair, n] : moved) {
    auto final_count = [&](SliceId id) {
      std::uint64_t t = 0;
      for (const auto& [c, owner] : new_owner)
        if (owner == id) ++t;
      return t;
    };
    if (final_count(pair.first) < initial[pair.first])
      events.push_back({pair.first, pair.second, n});
  }
  return events;
}

}  // namespace slicesim
