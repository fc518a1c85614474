#ifndef SLICESIM_SCENARIO_HPP_
#define SLICESIM_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/broker.hpp"
#include "slicesim/grid.hpp"
#include "slicesim/multiconn.hpp"
#include "slicesim/radio.hpp"
#include "slicesim/scheduling.hpp"
#include "slicesim/slices.hpp"
#include "slicesim/uca.hpp"

namespace slicesim {

// Declarative UE with its flows, as written in the scenario file.
struct UeSpec {
  Ue ue;
  std::vector<Flow> flows;
};

// Template for slices instantiated by accepted broker requests.
struct RequestClass {
  std::uint32_t class_id = 0;
  SliceId blueprint_id = 0;
  double prob_per_window = 0.0;  // Bernoulli arrival per window
  std::uint64_t demand_cells = 1;
  std::uint64_t duration_windows = 1;
  double price_per_window = 0.0;
  double penalty_per_violation = 0.0;
  Position ue_position;
  TrafficModel ue_traffic;  // flow given to the instantiated slice's UE
  std::uint64_t stop_after_window = 0;  // no arrivals at or after this window
};

struct UcaParams {
  bool enabled = false;
  std::size_t radius_nodes = 1;
  UcaCosts costs;
};

struct Scenario {
  GridConfig grid;
  std::vector<Numerology> numerologies;
  std::vector<Tile> tiles;  // empty = one tile covering the grid, numerology 0

  double area_x = 1000.0, area_y = 1000.0;
  Topology topology;
  std::vector<TransportLink> transport;

  std::vector<Tenant> tenants;
  std::vector<SliceBlueprint> blueprints;

  // static slices, active for the whole run
  std::vector<SliceId> static_slices;          // blueprint ids double as slice ids
  std::map<SliceId, SliceId> slice_blueprint;  // slice id -> blueprint id
  std::vector<UeSpec> ues;

  std::vector<McConfig> mc_configs;
  McLimits mc_limits;
  UcaParams uca;

  ChannelParams channel;
  SdmxPolicy sdmx;
  std::map<SliceId, SlicePolicy> slice_policies;
  AdmissionPolicy admission;

  // broker inputs: an explicit trace takes precedence over classes
  std::vector<SliceRequest> request_trace;
  std::vector<RequestClass> request_classes;

  std::uint64_t duration_windows = 0;
  std::uint64_t seed = 1;

  // resolved at load time
  ResourceGrid resource_grid;
  Tiling tiling;
  std::string canonical_json;  // sorted-key dump used for the config hash

  const SliceBlueprint& blueprint(SliceId id) const;
  SlicePolicy policy_for(SliceId slice) const;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);

// Stable hash of the canonical scenario serialization.
std::string config_hash(const Scenario& sc);

// Cross-validates references and module invariants; called by the loaders.
void validate_scenario(Scenario& sc);

}  // namespace slicesim

#endif
