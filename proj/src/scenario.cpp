#include "slicesim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slicesim/errors.hpp"

namespace slicesim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

double get_num(const json& j, const std::string& path, const std::string& key,
               std::optional<double> def = std::nullopt) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path, "missing field '" + key + "'");
  }
  if (!j[key].is_number()) fail(path + "." + key, "expected a number");
  return j[key].get<double>();
}

std::uint64_t get_uint(const json& j, const std::string& path,
                       const std::string& key,
                       std::optional<std::uint64_t> def = std::nullopt) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path, "missing field '" + key + "'");
  }
  if (!j[key].is_number_unsigned()) fail(path + "." + key, "expected a nonnegative integer");
  return j[key].get<std::uint64_t>();
}

std::string get_str(const json& j, const std::string& path,
                    const std::string& key,
                    std::optional<std::string> def = std::nullopt) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path, "missing field '" + key + "'");
  }
  return j[key].get<std::string>();
}

Position get_pos(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
    fail(path, "field '" + key + "' must be [x, y]");
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}

Cell parse_cell(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "cell must be [slot, rb]");
  return {j[0].get<std::uint32_t>(), j[1].get<std::uint32_t>()};
}

TrafficModel parse_traffic(const json& j, const std::string& path) {
  TrafficModel m;
  std::string kind = get_str(j, path, "model");
  if (kind == "full_buffer") {
    m.kind = TrafficModelKind::FullBuffer;
  } else if (kind == "poisson") {
    m.kind = TrafficModelKind::PoissonPackets;
    m.rate_pkts_per_s = get_num(j, path, "rate_pkts_per_s");
    m.packet_bits = get_num(j, path, "packet_bits");
  } else if (kind == "periodic") {
    m.kind = TrafficModelKind::Periodic;
    m.period_ms = get_num(j, path, "period_ms");
    m.packet_bits = get_num(j, path, "packet_bits");
    m.offset_ms = get_num(j, path, "offset_ms", 0.0);
  } else {
    fail(path, "unknown traffic model '" + kind + "'");
  }
  return m;
}

Sla parse_sla(const json& j, const std::string& path) {
  Sla sla;
  if (j.contains("preset")) {
    auto p = sla_preset(j["preset"].get<std::string>());
    if (!p) fail(path, "unknown SLA preset '" + j["preset"].get<std::string>() + "'");
    sla = *p;
  }
  if (j.contains("min_throughput_bps"))
    sla.min_throughput_bps = j["min_throughput_bps"].get<double>();
  if (j.contains("latency_budget_ms"))
    sla.latency_budget_ms = j["latency_budget_ms"].get<double>();
  if (j.contains("max_per")) sla.max_per = j["max_per"].get<double>();
  if (j.contains("deterministic_traffic"))
    sla.deterministic_traffic = j["deterministic_traffic"].get<bool>();
  if (j.contains("priority_weight"))
    sla.priority_weight = j["priority_weight"].get<double>();
  validate_sla(sla);
  return sla;
}

Scenario parse(const json& root) {
  Scenario sc;

  if (!root.contains("grid")) fail("scenario", "missing section 'grid'");
  const json& g = root["grid"];
  sc.grid.n_rb = static_cast<std::int64_t>(get_num(g, "grid", "n_rb"));
  sc.grid.slots_per_window =
      static_cast<std::int64_t>(get_num(g, "grid", "slots_per_window"));
  sc.grid.window_ms = get_num(g, "grid", "window_ms", 10.0);

  if (root.contains("numerologies")) {
    for (const json& jn : root["numerologies"]) {
      Numerology n;
      n.id = static_cast<std::uint32_t>(get_uint(jn, "numerologies[]", "id"));
      n.cell_duration_ms = get_num(jn, "numerologies[]", "cell_duration_ms", 1.0);
      n.cell_bandwidth_rb = static_cast<std::uint32_t>(
          get_uint(jn, "numerologies[]", "cell_bandwidth_rb", 1));
      n.symbols_per_cell = static_cast<std::uint32_t>(
          get_uint(jn, "numerologies[]", "symbols_per_cell", 14));
      sc.numerologies.push_back(n);
    }
  } else {
    sc.numerologies.push_back(Numerology{0, 1.0, 1, 14});
  }

  if (root.contains("tiles")) {
    std::uint32_t next_id = 0;
    for (const json& jt : root["tiles"]) {
      Tile t;
      t.id = static_cast<std::uint32_t>(get_uint(jt, "tiles[]", "id", next_id));
      next_id = t.id + 1;
      if (!jt.contains("rb") || !jt.contains("slots"))
        fail("tiles[]", "need 'rb' and 'slots' half-open ranges");
      t.rb_begin = jt["rb"][0].get<std::uint32_t>();
      t.rb_end = jt["rb"][1].get<std::uint32_t>();
      t.slot_begin = jt["slots"][0].get<std::uint32_t>();
      t.slot_end = jt["slots"][1].get<std::uint32_t>();
      t.numerology_id =
          static_cast<std::uint32_t>(get_uint(jt, "tiles[]", "numerology", 0));
      sc.tiles.push_back(t);
    }
  }

  if (root.contains("topology")) {
    const json& jt = root["topology"];
    if (jt.contains("area")) {
      sc.area_x = jt["area"][0].get<double>();
      sc.area_y = jt["area"][1].get<double>();
    }
    for (const json& jn : jt.value("nodes", json::array())) {
      RadioNode n;
      n.id = static_cast<NodeId>(get_uint(jn, "topology.nodes[]", "id"));
      n.position = get_pos(jn, "topology.nodes[]", "pos");
      n.site_id = static_cast<std::uint32_t>(
          get_uint(jn, "topology.nodes[]", "site", n.id));
      n.edge_cloud = jn.value("edge_cloud", false);
      sc.topology.nodes.push_back(n);
    }
    for (const json& jl : jt.value("transport", json::array())) {
      TransportLink l;
      l.a = static_cast<NodeId>(get_uint(jl, "topology.transport[]", "a"));
      l.b = static_cast<NodeId>(get_uint(jl, "topology.transport[]", "b"));
      l.latency_ms = get_num(jl, "topology.transport[]", "latency_ms", 0.0);
      l.capacity_bps = get_num(jl, "topology.transport[]", "capacity_bps", 0.0);
      sc.transport.push_back(l);
    }
  }

  for (const json& jt : root.value("tenants", json::array())) {
    Tenant t;
    t.id = static_cast<TenantId>(get_uint(jt, "tenants[]", "id"));
    t.name = get_str(jt, "tenants[]", "name", "");
    t.is_operator = jt.value("operator", false);
    sc.tenants.push_back(t);
  }

  for (const json& jb : root.value("blueprints", json::array())) {
    SliceBlueprint bp;
    bp.id = static_cast<SliceId>(get_uint(jb, "blueprints[]", "id"));
    bp.tenant_id = static_cast<TenantId>(get_uint(jb, "blueprints[]", "tenant", 0));
    std::string group = get_str(jb, "blueprints[]", "group", "A");
    if (group == "A") bp.sharing_group = SharingGroup::A;
    else if (group == "B") bp.sharing_group = SharingGroup::B;
    else if (group == "C") bp.sharing_group = SharingGroup::C;
    else fail("blueprints[]", "unknown sharing group '" + group + "'");
    std::uint64_t opt = get_uint(jb, "blueprints[]", "option", 1);
    if (opt < 1 || opt > 3) fail("blueprints[]", "option must be 1, 2 or 3");
    bp.ran_option = static_cast<RanOption>(opt);
    if (jb.contains("sla")) bp.sla = parse_sla(jb["sla"], "blueprints[].sla");
    if (jb.contains("nf_chain")) {
      for (const json& jf : jb["nf_chain"]) {
        auto tag = nf_tag_from_string(jf.get<std::string>());
        if (!tag)
          fail("blueprints[].nf_chain", "unknown NF tag '" + jf.get<std::string>() + "'");
        bp.nf_chain.push_back(*tag);
      }
    } else {
      bp.nf_chain = {NfTag::Mac, NfTag::CnSession};
    }
    bp.numerology_id =
        static_cast<std::uint32_t>(get_uint(jb, "blueprints[]", "numerology", 0));
    bp.slice_aware_ue = jb.value("slice_aware_ue", false);
    sc.blueprints.push_back(bp);
  }

  for (const json& js : root.value("slices", json::array())) {
    SliceId id = static_cast<SliceId>(get_uint(js, "slices[]", "id"));
    SliceId bp = static_cast<SliceId>(get_uint(js, "slices[]", "blueprint", id));
    sc.static_slices.push_back(id);
    sc.slice_blueprint[id] = bp;
  }

  for (const json& ju : root.value("ues", json::array())) {
    UeSpec spec;
    spec.ue.id = static_cast<UeId>(get_uint(ju, "ues[]", "id"));
    spec.ue.slice_id = static_cast<SliceId>(get_uint(ju, "ues[]", "slice"));
    spec.ue.position = get_pos(ju, "ues[]", "pos");
    spec.ue.speed_mps = get_num(ju, "ues[]", "speed_mps", 0.0);
    for (const json& jn : ju.value("serving", json::array()))
      spec.ue.serving_nodes.push_back(jn.get<NodeId>());
    std::uint32_t next_flow = 0;
    for (const json& jf : ju.value("flows", json::array())) {
      Flow f;
      f.id = static_cast<std::uint32_t>(get_uint(jf, "ues[].flows[]", "id", next_flow));
      next_flow = f.id + 1;
      f.ue_id = spec.ue.id;
      f.model = parse_traffic(jf, "ues[].flows[]");
      spec.flows.push_back(f);
    }
    sc.ues.push_back(spec);
  }

  for (const json& jm : root.value("mc_configs", json::array())) {
    McConfig m;
    m.ue_id = static_cast<UeId>(get_uint(jm, "mc_configs[]", "ue"));
    for (const json& jl : jm.value("legs", json::array()))
      m.legs.push_back(jl.get<NodeId>());
    std::string anchor = get_str(jm, "mc_configs[]", "anchor", "common_pdcp");
    if (anchor == "common_pdcp") m.anchor = McAnchor::CommonPdcp;
    else if (anchor == "common_mac") m.anchor = McAnchor::CommonMac;
    else fail("mc_configs[]", "unknown anchor '" + anchor + "'");
    std::string mode = get_str(jm, "mc_configs[]", "mode", "split");
    if (mode == "split") m.mode = McMode::Split;
    else if (mode == "duplicate") m.mode = McMode::Duplicate;
    else fail("mc_configs[]", "unknown mode '" + mode + "'");
    for (const json& jp : jm.value("leg_per", json::array()))
      m.leg_per.push_back(jp.get<double>());
    sc.mc_configs.push_back(m);
  }
  if (root.contains("mc_limits")) {
    const json& jl = root["mc_limits"];
    sc.mc_limits.mac_latency_limit_ms =
        get_num(jl, "mc_limits", "mac_latency_limit_ms", 0.25);
    sc.mc_limits.mac_capacity_floor_bps =
        get_num(jl, "mc_limits", "mac_capacity_floor_bps", 10e9);
  }

  if (root.contains("uca")) {
    const json& ju = root["uca"];
    sc.uca.enabled = ju.value("enabled", true);
    sc.uca.radius_nodes =
        static_cast<std::size_t>(get_uint(ju, "uca", "radius_nodes", 1));
    if (ju.contains("costs")) {
      const json& jc = ju["costs"];
      sc.uca.costs.c_intra = get_uint(jc, "uca.costs", "c_intra", 1);
      sc.uca.costs.c_reform = get_uint(jc, "uca.costs", "c_reform", 0);
      sc.uca.costs.c_pathswitch = get_uint(jc, "uca.costs", "c_pathswitch", 2);
      sc.uca.costs.c_ho_ran = get_uint(jc, "uca.costs", "c_ho_ran", 4);
      sc.uca.costs.c_ho_cn = get_uint(jc, "uca.costs", "c_ho_cn", 2);
    }
  }

  if (root.contains("channel")) {
    const json& jc = root["channel"];
    std::string mode = get_str(jc, "channel", "mode", "logdistance");
    if (mode == "logdistance") sc.channel.mode = ChannelParams::Mode::LogDistance;
    else if (mode == "constant_se") sc.channel.mode = ChannelParams::Mode::ConstantSe;
    else fail("channel", "unknown mode '" + mode + "'");
    sc.channel.constant_se = get_num(jc, "channel", "constant_se", 2.0);
    sc.channel.ref_sinr_db = get_num(jc, "channel", "ref_sinr_db", 30.0);
    sc.channel.pathloss_exponent = get_num(jc, "channel", "pathloss_exponent", 3.5);
    sc.channel.fading_stddev_db = get_num(jc, "channel", "fading_stddev_db", 4.0);
    sc.channel.se_cap = get_num(jc, "channel", "se_cap", 6.0);
  }

  if (root.contains("sdmx")) {
    const json& js = root["sdmx"];
    std::string obj = get_str(js, "sdmx", "objective", "weighted_fair");
    if (obj == "static_split") sc.sdmx.objective = SdmxObjective::StaticSplit;
    else if (obj == "weighted_fair") sc.sdmx.objective = SdmxObjective::WeightedFair;
    else if (obj == "max_se") sc.sdmx.objective = SdmxObjective::MaxSpectralEfficiency;
    else if (obj == "fairness_floor") sc.sdmx.objective = SdmxObjective::FairnessWithFloor;
    else fail("sdmx", "unknown objective '" + obj + "'");
    const json weights = js.value("weights", json::object());
    for (const auto& [key, val] : weights.items())
      sc.sdmx.weights[static_cast<SliceId>(std::stoul(key))] = val.get<double>();
    const json floors = js.value("floors", json::object());
    for (const auto& [key, val] : floors.items())
      sc.sdmx.floors[static_cast<SliceId>(std::stoul(key))] =
          val.get<std::uint64_t>();
    for (const json& jr : js.value("reservations", json::array())) {
      std::set<Cell> cells;
      for (const json& jc : jr.value("cells", json::array()))
        cells.insert(parse_cell(jc, "sdmx.reservations[].cells[]"));
      reserve_semi_persistent(
          sc.sdmx, static_cast<SliceId>(get_uint(jr, "sdmx.reservations[]", "slice")),
          cells, get_uint(jr, "sdmx.reservations[]", "period", 1));
    }
    for (const json& jb : js.value("blacklist", json::array())) {
      SliceId id = static_cast<SliceId>(get_uint(jb, "sdmx.blacklist[]", "slice"));
      for (const json& jc : jb.value("cells", json::array()))
        sc.sdmx.blacklist[id].insert(parse_cell(jc, "sdmx.blacklist[].cells[]"));
    }
  }

  const json policies = root.value("slice_policies", json::object());
  for (const auto& [key, val] : policies.items()) {
    SlicePolicy p;
    std::string d = get_str(val, "slice_policies", "discipline", "round_robin");
    if (d == "round_robin") p.discipline = SliceDiscipline::RoundRobin;
    else if (d == "pf") p.discipline = SliceDiscipline::ProportionalFair;
    else if (d == "edf") p.discipline = SliceDiscipline::EarliestDeadlineFirst;
    else fail("slice_policies", "unknown discipline '" + d + "'");
    p.pf_horizon = get_num(val, "slice_policies", "pf_horizon", 100.0);
    sc.slice_policies[static_cast<SliceId>(std::stoul(key))] = p;
  }

  if (root.contains("admission")) {
    const json& ja = root["admission"];
    std::string kind = get_str(ja, "admission", "kind", "always_accept");
    if (kind == "always_accept") sc.admission.kind = AdmissionKind::AlwaysAccept;
    else if (kind == "greedy") sc.admission.kind = AdmissionKind::GreedyCapacity;
    else if (kind == "threshold") sc.admission.kind = AdmissionKind::Threshold;
    else fail("admission", "unknown kind '" + kind + "'");
    for (const json& jt : ja.value("thresholds", json::array()))
      sc.admission.thresholds.push_back(jt.get<double>());
  }

  if (root.contains("requests")) {
    const json& jr = root["requests"];
    for (const json& jt : jr.value("trace", json::array())) {
      SliceRequest r;
      r.id = static_cast<std::uint32_t>(get_uint(jt, "requests.trace[]", "id"));
      r.tenant_id = static_cast<TenantId>(get_uint(jt, "requests.trace[]", "tenant", 0));
      r.blueprint_id =
          static_cast<SliceId>(get_uint(jt, "requests.trace[]", "blueprint"));
      r.demand_cells_per_window = get_uint(jt, "requests.trace[]", "demand_cells");
      r.duration_windows = get_uint(jt, "requests.trace[]", "duration_windows");
      r.price_per_window = get_num(jt, "requests.trace[]", "price_per_window", 0.0);
      r.penalty_per_violation =
          get_num(jt, "requests.trace[]", "penalty_per_violation", 0.0);
      r.arrival_window = get_uint(jt, "requests.trace[]", "arrival_window");
      r.class_id = static_cast<std::uint32_t>(get_uint(jt, "requests.trace[]", "class", 0));
      sc.request_trace.push_back(r);
    }
    for (const json& jc : jr.value("classes", json::array())) {
      RequestClass c;
      c.class_id = static_cast<std::uint32_t>(get_uint(jc, "requests.classes[]", "class_id"));
      c.blueprint_id =
          static_cast<SliceId>(get_uint(jc, "requests.classes[]", "blueprint"));
      c.prob_per_window = get_num(jc, "requests.classes[]", "prob_per_window");
      c.demand_cells = get_uint(jc, "requests.classes[]", "demand_cells");
      c.duration_windows = get_uint(jc, "requests.classes[]", "duration_windows");
      c.price_per_window = get_num(jc, "requests.classes[]", "price_per_window");
      c.penalty_per_violation =
          get_num(jc, "requests.classes[]", "penalty_per_violation", 0.0);
      if (jc.contains("ue_pos")) c.ue_position = get_pos(jc, "requests.classes[]", "ue_pos");
      if (jc.contains("ue_traffic"))
        c.ue_traffic = parse_traffic(jc["ue_traffic"], "requests.classes[].ue_traffic");
      c.stop_after_window = get_uint(jc, "requests.classes[]", "stop_after_window", 0);
      sc.request_classes.push_back(c);
    }
  }

  sc.duration_windows = get_uint(root, "scenario", "duration_windows");
  sc.seed = get_uint(root, "scenario", "seed", 1);
  return sc;
}

}  // namespace

const SliceBlueprint& Scenario::blueprint(SliceId id) const {
  for (const SliceBlueprint& bp : blueprints)
    if (bp.id == id) return bp;
  throw ValidationError("unknown blueprint id " + std::to_string(id));
}

SlicePolicy Scenario::policy_for(SliceId slice) const {
  auto it = slice_policies.find(slice);
  return it == slice_policies.end() ? SlicePolicy{} : it->second;
}

void validate_scenario(Scenario& sc) {
  sc.resource_grid = build_grid(sc.grid);
  for (const Numerology& n : sc.numerologies) validate_numerology(n);
  {
    std::set<std::uint32_t> ids;
    for (const Numerology& n : sc.numerologies)
      if (!ids.insert(n.id).second)
        throw ValidationError("duplicate numerology id " + std::to_string(n.id));
  }

  if (sc.tiles.empty()) {
    Tile whole;
    whole.id = 0;
    whole.rb_end = sc.resource_grid.n_rb;
    whole.slot_end = sc.resource_grid.slots_per_window;
    whole.numerology_id = sc.numerologies.front().id;
    sc.tiles.push_back(whole);
  }
  for (const Tile& t : sc.tiles) {
    bool known = false;
    for (const Numerology& n : sc.numerologies)
      if (n.id == t.numerology_id) known = true;
    if (!known)
      throw ValidationError("tiles[" + std::to_string(t.id) +
                            "].numerology: unknown numerology id " +
                            std::to_string(t.numerology_id));
  }
  sc.tiling = carve_tiles(sc.resource_grid, sc.tiles);

  {
    std::set<NodeId> node_ids;
    for (const RadioNode& n : sc.topology.nodes)
      if (!node_ids.insert(n.id).second)
        throw ValidationError("duplicate node id " + std::to_string(n.id));
    for (const TransportLink& l : sc.transport)
      if (!node_ids.count(l.a) || !node_ids.count(l.b))
        throw ValidationError("transport link references unknown node");
  }

  {
    std::set<TenantId> tenant_ids;
    for (const Tenant& t : sc.tenants)
      if (!tenant_ids.insert(t.id).second)
        throw ValidationError("duplicate tenant id " + std::to_string(t.id));
  }

  std::set<SliceId> bp_ids;
  for (const SliceBlueprint& bp : sc.blueprints) {
    if (!bp_ids.insert(bp.id).second)
      throw ValidationError("duplicate blueprint id " + std::to_string(bp.id));
    validate_blueprint(bp);
    bool known = false;
    for (const Numerology& n : sc.numerologies)
      if (n.id == bp.numerology_id) known = true;
    if (!known)
      throw ValidationError("blueprints[" + std::to_string(bp.id) +
                            "].numerology: unknown numerology id " +
                            std::to_string(bp.numerology_id));
  }

  std::set<SliceId> slice_ids;
  for (SliceId id : sc.static_slices) {
    if (!slice_ids.insert(id).second)
      throw ValidationError("duplicate slice id " + std::to_string(id));
    SliceId bp = sc.slice_blueprint.at(id);
    if (!bp_ids.count(bp))
      throw ValidationError("slices[" + std::to_string(id) +
                            "].blueprint: unknown blueprint id " +
                            std::to_string(bp));
  }

  for (const UeSpec& spec : sc.ues) {
    if (!slice_ids.count(spec.ue.slice_id))
      throw ValidationError("ues[" + std::to_string(spec.ue.id) +
                            "].slice: unknown slice id " +
                            std::to_string(spec.ue.slice_id));
    if (spec.ue.serving_nodes.empty() && !sc.topology.nodes.empty())
      throw ValidationError("ues[" + std::to_string(spec.ue.id) +
                            "]: empty serving node list");
    for (NodeId n : spec.ue.serving_nodes)
      if (!sc.topology.find(n))
        throw ValidationError("ues[" + std::to_string(spec.ue.id) +
                              "].serving: unknown node " + std::to_string(n));
  }
  {
    std::set<UeId> ue_ids;
    for (const UeSpec& spec : sc.ues)
      if (!ue_ids.insert(spec.ue.id).second)
        throw ValidationError("duplicate UE id " + std::to_string(spec.ue.id));
  }

  for (const McConfig& m : sc.mc_configs) {
    bool ue_known = false;
    for (const UeSpec& spec : sc.ues)
      if (spec.ue.id == m.ue_id) ue_known = true;
    if (!ue_known)
      throw ValidationError("mc_configs[]: unknown UE " + std::to_string(m.ue_id));
    validate_anchor(m, sc.topology, sc.transport, sc.mc_limits);
    if (!m.leg_per.empty() && m.leg_per.size() != m.legs.size())
      throw ValidationError("mc_configs[]: leg_per size mismatch for UE " +
                            std::to_string(m.ue_id));
  }

  if (sc.uca.enabled && sc.uca.radius_nodes > sc.topology.nodes.size())
    throw ValidationError("uca.radius_nodes exceeds topology size");

  for (const Reservation& r : sc.sdmx.reservations) {
    for (const Cell& c : r.cells)
      if (!sc.resource_grid.contains(c))
        throw ValidationError("reservation cell outside grid");
  }

  for (const SliceRequest& r : sc.request_trace) {
    validate_request(r, sc.resource_grid.cell_count());
    if (!bp_ids.count(r.blueprint_id))
      throw ValidationError("requests.trace[" + std::to_string(r.id) +
                            "].blueprint: unknown blueprint id " +
                            std::to_string(r.blueprint_id));
  }
  for (const RequestClass& c : sc.request_classes) {
    if (!bp_ids.count(c.blueprint_id))
      throw ValidationError("requests.classes[" + std::to_string(c.class_id) +
                            "].blueprint: unknown blueprint id " +
                            std::to_string(c.blueprint_id));
    if (c.prob_per_window < 0.0 || c.prob_per_window > 1.0)
      throw ValidationError("requests.classes[]: prob_per_window out of [0,1]");
    if (c.demand_cells < 1 || c.demand_cells > sc.resource_grid.cell_count())
      throw ValidationError("requests.classes[]: demand_cells out of range");
  }

  if (sc.admission.kind == AdmissionKind::Threshold) {
    for (double t : sc.admission.thresholds)
      if (t < 0.0 || t > 1.0)
        throw ValidationError("admission.thresholds must lie in [0,1]");
  }
}

Scenario scenario_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  Scenario sc = parse(root);
  sc.canonical_json = root.dump();
  validate_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string config_hash(const Scenario& sc) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : sc.canonical_json) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace slicesim
