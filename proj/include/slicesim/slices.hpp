#ifndef SLICESIM_SLICES_HPP_
#define SLICESIM_SLICES_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slicesim/grid.hpp"

namespace slicesim {

using TenantId = std::uint32_t;

// Closed vocabulary of network function placement categories.
enum class NfTag {
  RanLowerPhy,
  RanUpperPhy,
  Mac,
  Rlc,
  Pdcp,
  Rrc,
  CnMobility,
  CnIdentity,
  CnSubscription,
  CnSession,
  CnUserPlane,
};

bool is_ran_tag(NfTag tag);
bool is_cn_tag(NfTag tag);
std::string to_string(NfTag tag);
std::optional<NfTag> nf_tag_from_string(const std::string& s);

// 3GPP sharing levels: common RAN everywhere, CN sharing deepens A -> C.
enum class SharingGroup { A, B, C };

// RAN sharing depth: shared lower PHY (1), shared MAC with tenant
// pre-scheduling (2), fully shared RAN (3).
enum class RanOption { Option1 = 1, Option2 = 2, Option3 = 3 };

struct Sla {
  double min_throughput_bps = 0.0;
  double latency_budget_ms = 100.0;
  double max_per = 1.0;
  bool deterministic_traffic = false;
  double priority_weight = 1.0;
};

void validate_sla(const Sla& sla);

// Shipped SLA presets.
Sla sla_preset_mbb();                  // packet error rate 1e-4
Sla sla_preset_machine_kinaesthetic(); // 1 ms latency budget
Sla sla_preset_human_kinaesthetic();   // 5 ms latency budget
Sla sla_preset_tactile_info();         // 100 ms latency budget
std::optional<Sla> sla_preset(const std::string& name);

struct SliceBlueprint {
  SliceId id = 0;
  TenantId tenant_id = 0;
  SharingGroup sharing_group = SharingGroup::A;
  RanOption ran_option = RanOption::Option1;
  Sla sla;
  std::vector<NfTag> nf_chain;
  std::uint32_t numerology_id = 0;
  bool slice_aware_ue = false;  // recorded for reporting only
};

// Throws on duplicate NF tags or a chain missing a RAN or CN function.
const SliceBlueprint& validate_blueprint(const SliceBlueprint& bp);

struct NfSplit {
  std::set<NfTag> dedicated;
  std::set<NfTag> common;
};

// Dedicated/common partition of the chain per the blueprint's sharing group.
NfSplit split_functions(const SliceBlueprint& bp);

enum class SliceState { Requested, Admitted, Active, Terminated };
enum class LifecycleEvent { Admit, Activate, Reject, Terminate };

std::string to_string(SliceState s);

struct SliceInstance {
  SliceId id = 0;
  SliceId blueprint_id = 0;
  SliceState state = SliceState::Requested;
  std::set<NfTag> dedicated_nfs;
  std::set<NfTag> common_nfs;
  std::uint64_t admitted_from = 0;  // window interval [from, until)
  std::uint64_t admitted_until = 0;
};

// Requested -> Admitted -> Active -> Terminated, plus Requested -> Terminated
// on rejection. Terminated is absorbing; illegal events throw.
SliceInstance transition(SliceInstance instance, LifecycleEvent event);

struct Tenant {
  TenantId id = 0;
  std::string name;
  bool is_operator = false;  // MNO vs vertical/MVNO
};

}  // namespace slicesim

#endif
