#include "slicesim/grid.hpp"

#include <algorithm>
#include <sstream>

#include "slicesim/errors.hpp"

namespace slicesim {

void validate_numerology(const Numerology& n) {
  if (n.cell_duration_ms <= 0.0)
    throw ValidationError("numerology " + std::to_string(n.id) +
                          ": cell_duration_ms must be > 0");
  if (n.cell_bandwidth_rb < 1)
    throw ValidationError("numerology " + std::to_string(n.id) +
                          ": cell_bandwidth_rb must be >= 1");
  if (n.symbols_per_cell < 1)
    throw ValidationError("numerology " + std::to_string(n.id) +
                          ": symbols_per_cell must be >= 1");
}

std::vector<Cell> ResourceGrid::all_cells() const {
  std::vector<Cell> out;
  out.reserve(cell_count());
  for (std::uint32_t s = 0; s < slots_per_window; ++s)
    for (std::uint32_t r = 0; r < n_rb; ++r) out.push_back({s, r});
  return out;
}

ResourceGrid build_grid(const GridConfig& cfg) {
  if (cfg.n_rb < 1) throw ValidationError("grid.n_rb must be >= 1");
  if (cfg.slots_per_window < 1)
    throw ValidationError("grid.slots_per_window must be >= 1");
  if (cfg.window_ms <= 0.0) throw ValidationError("grid.window_ms must be > 0");
  ResourceGrid g;
  g.n_rb = static_cast<std::uint32_t>(cfg.n_rb);
  g.slots_per_window = static_cast<std::uint32_t>(cfg.slots_per_window);
  g.window_ms = cfg.window_ms;
  return g;
}

const Tile& Tiling::tile_of(const Cell& c) const {
  for (const Tile& t : tiles)
    if (t.contains(c)) return t;
  throw InvariantViolation("cell (" + std::to_string(c.slot) + "," +
                           std::to_string(c.rb) + ") outside tiling");
}

Tiling carve_tiles(const ResourceGrid& grid, const std::vector<Tile>& specs) {
  for (const Tile& t : specs) {
    if (t.rb_begin >= t.rb_end || t.slot_begin >= t.slot_end)
      throw ValidationError("tile " + std::to_string(t.id) + ": empty range");
    if (t.rb_end > grid.n_rb || t.slot_end > grid.slots_per_window)
      throw ValidationError("tile " + std::to_string(t.id) +
                            ": out of grid bounds");
  }
  // exact cover: each cell must belong to exactly one tile
  std::vector<std::uint32_t> owner(grid.cell_count(), 0);
  std::vector<bool> covered(grid.cell_count(), false);
  for (const Tile& t : specs) {
    for (std::uint32_t s = t.slot_begin; s < t.slot_end; ++s) {
      for (std::uint32_t r = t.rb_begin; r < t.rb_end; ++r) {
        std::size_t idx = static_cast<std::size_t>(s) * grid.n_rb + r;
        if (covered[idx]) {
          std::ostringstream os;
          os << "tiles " << owner[idx] << " and " << t.id
             << " overlap at cell (" << s << "," << r << ")";
          throw ValidationError(os.str());
        }
        covered[idx] = true;
        owner[idx] = t.id;
      }
    }
  }
  for (std::uint32_t s = 0; s < grid.slots_per_window; ++s)
    for (std::uint32_t r = 0; r < grid.n_rb; ++r)
      if (!covered[static_cast<std::size_t>(s) * grid.n_rb + r])
        throw ValidationError("tiling gap at cell (" + std::to_string(s) + "," +
                              std::to_string(r) + ")");
  return Tiling{specs};
}

bool masks_disjoint(const std::vector<ResourceMask>& masks) {
  if (masks.empty()) return true;
  std::uint64_t window = masks.front().window_index;
  std::set<Cell> seen;
  for (const ResourceMask& m : masks) {
    if (m.window_index != window)
      throw ValidationError("masks_disjoint: mixed window indices");
    for (const Cell& c : m.cells)
      if (!seen.insert(c).second) return false;
  }
  return true;
}

double mask_capacity_bits(const ResourceMask& mask, const ResourceGrid& grid,
                          const std::function<double(const Cell&)>& se,
                          const std::function<std::uint32_t(const Cell&)>& symbols) {
  double bits = 0.0;
  for (const Cell& c : mask.cells) {
    if (!grid.contains(c))
      throw ValidationError("mask cell outside grid bounds");
    bits += se(c) * symbols(c);
  }
  return bits;
}

}  // namespace slicesim
