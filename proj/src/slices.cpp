#include "slicesim/slices.hpp"

#include <algorithm>

#include "slicesim/errors.hpp"

namespace slicesim {

bool is_ran_tag(NfTag tag) {
  switch (tag) {
    case NfTag::RanLowerPhy:
    case NfTag::RanUpperPhy:
    case NfTag::Mac:
    case NfTag::Rlc:
    case NfTag::Pdcp:
    case NfTag::Rrc:
      return true;
    default:
      return false;
  }
}

bool is_cn_tag(NfTag tag) { return !is_ran_tag(tag); }

std::string to_string(NfTag tag) {
  switch (tag) {
    case NfTag::RanLowerPhy: return "ran-lower-phy";
    case NfTag::RanUpperPhy: return "ran-upper-phy";
    case NfTag::Mac: return "mac";
    case NfTag::Rlc: return "rlc";
    case NfTag::Pdcp: return "pdcp";
    case NfTag::Rrc: return "rrc";
    case NfTag::CnMobility: return "cn-mobility";
    case NfTag::CnIdentity: return "cn-identity";
    case NfTag::CnSubscription: return "cn-subscription";
    case NfTag::CnSession: return "cn-session";
    case NfTag::CnUserPlane: return "cn-userplane";
  }
  return "?";
}

std::optional<NfTag> nf_tag_from_string(const std::string& s) {
  static const std::vector<NfTag> all = {
      NfTag::RanLowerPhy,  NfTag::RanUpperPhy,   NfTag::Mac,
      NfTag::Rlc,          NfTag::Pdcp,          NfTag::Rrc,
      NfTag::CnMobility,   NfTag::CnIdentity,    NfTag::CnSubscription,
      NfTag::CnSession,    NfTag::CnUserPlane};
  for (NfTag t : all)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

void validate_sla(const Sla& sla) {
  if (sla.min_throughput_bps < 0.0)
    throw ValidationError("sla.min_throughput_bps must be >= 0");
  if (sla.latency_budget_ms <= 0.0)
    throw ValidationError("sla.latency_budget_ms must be > 0");
  if (!(sla.max_per > 0.0 && sla.max_per <= 1.0))
    throw ValidationError("sla.max_per must be in (0, 1]");
  if (sla.priority_weight <= 0.0)
    throw ValidationError("sla.priority_weight must be > 0");
}

Sla sla_preset_mbb() {
  Sla s;
  s.max_per = 1e-4;
  s.latency_budget_ms = 300.0;
  return s;
}

Sla sla_preset_machine_kinaesthetic() {
  Sla s;
  s.latency_budget_ms = 1.0;
  s.max_per = 1e-5;
  s.deterministic_traffic = true;
  return s;
}

Sla sla_preset_human_kinaesthetic() {
  Sla s;
  s.latency_budget_ms = 5.0;
  s.max_per = 1e-4;
  return s;
}

Sla sla_preset_tactile_info() {
  Sla s;
  s.latency_budget_ms = 100.0;
  s.max_per = 1e-4;
  return s;
}

std::optional<Sla> sla_preset(const std::string& name) {
  if (name == "mbb") return sla_preset_mbb();
  if (name == "machine-kinaesthetic") return sla_preset_machine_kinaesthetic();
  if (name == "human-kinaesthetic") return sla_preset_human_kinaesthetic();
  if (name == "tactile-info") return sla_preset_tactile_info();
  return std::nullopt;
}

const SliceBlueprint& validate_blueprint(const SliceBlueprint& bp) {
  validate_sla(bp.sla);
  std::set<NfTag> seen;
  bool has_ran = false, has_cn = false;
  for (NfTag t : bp.nf_chain) {
    if (!seen.insert(t).second)
      throw ValidationError("blueprint " + std::to_string(bp.id) +
                            ": duplicate NF tag " + to_string(t));
    if (is_ran_tag(t)) has_ran = true;
    if (is_cn_tag(t)) has_cn = true;
  }
  if (!has_ran)
    throw ValidationError("blueprint " + std::to_string(bp.id) +
                          ": nf_chain has no RAN function");
  if (!has_cn)
    throw ValidationError("blueprint " + std::to_string(bp.id) +
                          ": nf_chain has no CN function");
  return bp;
}

NfSplit split_functions(const SliceBlueprint& bp) {
  validate_blueprint(bp);
  NfSplit out;
  for (NfTag t : bp.nf_chain) {
    bool common;
    if (is_ran_tag(t)) {
      common = true;  // all three groups assume a common RAN
    } else {
      switch (bp.sharing_group) {
        case SharingGroup::A:
          common = false;
          break;
        case SharingGroup::B:
          common = (t == NfTag::CnIdentity || t == NfTag::CnSubscription ||
                    t == NfTag::CnMobility);
          break;
        case SharingGroup::C:
          common = (t != NfTag::CnUserPlane);
          break;
        default:
          common = false;
      }
    }
    (common ? out.common : out.dedicated).insert(t);
  }
  return out;
}

std::string to_string(SliceState s) {
  switch (s) {
    case SliceState::Requested: return "requested";
    case SliceState::Admitted: return "admitted";
    case SliceState::Active: return "active";
    case SliceState::Terminated: return "terminated";
  }
  return "?";
}

SliceInstance transition(SliceInstance instance, LifecycleEvent event) {
  auto illegal = [&]() -> SliceInstance {
    throw ValidationError("slice " + std::to_string(instance.id) +
                          ": illegal lifecycle event in state " +
                          to_string(instance.state));
  };
  switch (instance.state) {
    case SliceState::Requested:
      if (event == LifecycleEvent::Admit)
        instance.state = SliceState::Admitted;
      else if (event == LifecycleEvent::Reject ||
               event == LifecycleEvent::Terminate)
        instance.state = SliceState::Terminated;
      else
        return illegal();
      break;
    case SliceState::Admitted:
      if (event == LifecycleEvent::Activate)
        instance.state = SliceState::Active;
      else if (event == LifecycleEvent::Terminate)
        instance.state = SliceState::Terminated;
      else
        return illegal();
      break;
    case SliceState::Active:
      if (event == LifecycleEvent::Terminate)
        instance.state = SliceState::Terminated;
      else
        return illegal();
      break;
    case SliceState::Terminated:
      return illegal();  // absorbing
  }
  return instance;
}

}  // namespace slicesim
