#ifndef SLICESIM_GRID_HPP_
#define SLICESIM_GRID_HPP_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace slicesim {

using SliceId = std::uint32_t;
using UeId = std::uint32_t;
using NodeId = std::uint32_t;

// One RB over one slot inside a scheduling window.
struct Cell {
  std::uint32_t slot = 0;
  std::uint32_t rb = 0;

  auto operator<=>(const Cell&) const = default;
};

// Radio frame parameterization of a tile.
struct Numerology {
  std::uint32_t id = 0;
  double cell_duration_ms = 1.0;
  std::uint32_t cell_bandwidth_rb = 1;
  std::uint32_t symbols_per_cell = 14;
};

void validate_numerology(const Numerology& n);

// Shared time-frequency spectrum for one scheduling window; windows repeat.
struct ResourceGrid {
  std::uint32_t n_rb = 0;
  std::uint32_t slots_per_window = 0;
  double window_ms = 10.0;

  std::uint64_t cell_count() const {
    return static_cast<std::uint64_t>(n_rb) * slots_per_window;
  }
  bool contains(const Cell& c) const {
    return c.slot < slots_per_window && c.rb < n_rb;
  }
  // All cells in lexicographic (slot, rb) order; the canonical order used by
  // every deterministic tie-break in the scheduler.
  std::vector<Cell> all_cells() const;
};

struct GridConfig {
  std::int64_t n_rb = 0;
  std::int64_t slots_per_window = 0;
  double window_ms = 10.0;
};

ResourceGrid build_grid(const GridConfig& cfg);

// Rectangular region of the grid carrying exactly one numerology.
struct Tile {
  std::uint32_t id = 0;
  std::uint32_t rb_begin = 0, rb_end = 0;      // half-open
  std::uint32_t slot_begin = 0, slot_end = 0;  // half-open
  std::uint32_t numerology_id = 0;

  bool contains(const Cell& c) const {
    return c.rb >= rb_begin && c.rb < rb_end && c.slot >= slot_begin &&
           c.slot < slot_end;
  }
  std::uint64_t cell_count() const {
    return static_cast<std::uint64_t>(rb_end - rb_begin) *
           (slot_end - slot_begin);
  }
};

// Exact partition of the grid into tiles.
struct Tiling {
  std::vector<Tile> tiles;

  const Tile& tile_of(const Cell& c) const;
  std::uint32_t numerology_of(const Cell& c) const { return tile_of(c).numerology_id; }
};

// Validates bounds, pairwise disjointness and exact cover.
Tiling carve_tiles(const ResourceGrid& grid, const std::vector<Tile>& specs);

// Group of grid cells granted to one slice for one window.
struct ResourceMask {
  SliceId slice_id = 0;
  std::uint64_t window_index = 0;
  std::set<Cell> cells;

  bool empty() const { return cells.empty(); }
};

bool masks_disjoint(const std::vector<ResourceMask>& masks);

// Bits deliverable over a mask: sum over cells of se(cell) * symbols_per_cell.
// `se` is the UE's spectral efficiency on a cell (bits/symbol); `symbols`
// resolves the cell's tile numerology. Both come from the caller so the grid
// stays independent of the channel model.
double mask_capacity_bits(const ResourceMask& mask, const ResourceGrid& grid,
                          const std::function<double(const Cell&)>& se,
                          const std::function<std::uint32_t(const Cell&)>& symbols);

}  // namespace slicesim

#endif
