#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slicesim/errors.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/uca.hpp"

using namespace slicesim;

namespace {

Topology line_topology(int n, double spacing = 100.0) {
  Topology t;
  for (int i = 0; i < n; ++i)
    t.nodes.push_back({static_cast<NodeId>(i), {i * spacing, 0.0},
                       static_cast<std::uint32_t>(i), false});
  return t;
}

Ue ue_at(double x, double y = 0.0) {
  Ue u;
  u.id = 1;
  u.position = {x, y};
  u.serving_nodes = {0};
  return u;
}

}  // namespace

TEST_CASE("form_uca picks the k nearest with the nearest as anchor") {
  Topology topo = line_topology(5);
  SUBCASE("k = 1") {
    Uca u = form_uca(ue_at(210.0), topo, 1);
    CHECK(u.nodes == std::set<NodeId>{2});
    CHECK(u.anchor == 2);
    CHECK(u.radius_nodes == 1);
  }
  SUBCASE("k = 3") {
    Uca u = form_uca(ue_at(210.0), topo, 3);
    CHECK(u.nodes == std::set<NodeId>{1, 2, 3});
    CHECK(u.anchor == 2);
  }
  SUBCASE("k exceeding the node count is an error") {
    CHECK_THROWS_AS(form_uca(ue_at(0.0), topo, 6), ValidationError);
    CHECK_THROWS_AS(form_uca(ue_at(0.0), topo, 0), ValidationError);
  }
  SUBCASE("distance ties resolve to lower node ids") {
    Uca u = form_uca(ue_at(150.0), topo, 1);
    CHECK(u.anchor == 1);
  }
}

TEST_CASE("intra-UCA moves cost RAN only and keep the anchor") {
  Topology topo = line_topology(5);
  UcaCosts costs;
  Ue u = ue_at(210.0);
  Uca uca = form_uca(u, topo, 3);  // {1,2,3}, anchor 2

  auto delta = on_cell_change(uca, u, 3, topo, costs);
  CHECK(delta.ran_messages == costs.c_intra);
  CHECK(delta.cn_messages == 0);
  CHECK(uca.anchor == 2);
  CHECK(uca.nodes == std::set<NodeId>{1, 2, 3});
  CHECK(delta.per_event.at("intra-uca") == 1);
}

TEST_CASE("inter-UCA moves re-form around the new node and switch the path") {
  Topology topo = line_topology(7);
  UcaCosts costs;
  Ue u = ue_at(210.0);
  Uca uca = form_uca(u, topo, 3);  // {1,2,3}

  u.position = {410.0, 0.0};
  auto delta = on_cell_change(uca, u, 4, topo, costs);
  CHECK(uca.anchor == 4);
  CHECK(uca.nodes == std::set<NodeId>{3, 4, 5});  // slid, centered on the UE
  CHECK(delta.ran_messages == costs.reform_cost(3));
  CHECK(delta.cn_messages == costs.c_pathswitch);
  CHECK(delta.per_event.at("inter-uca") == 1);
}

TEST_CASE("reform cost defaults to k + 2 and honors an explicit override") {
  UcaCosts costs;
  CHECK(costs.reform_cost(3) == 5);
  CHECK(costs.reform_cost(1) == 3);
  costs.c_reform = 9;
  CHECK(costs.reform_cost(3) == 9);
}

TEST_CASE("baseline handover pays RAN and CN every time") {
  UcaCosts costs;
  auto d = baseline_handover(costs);
  CHECK(d.ran_messages == costs.c_ho_ran);
  CHECK(d.cn_messages == costs.c_ho_cn);

  SignalingCounters total;
  for (int i = 0; i < 10; ++i) total += baseline_handover(costs);
  CHECK(total.ran_messages == 10 * costs.c_ho_ran);
  CHECK(total.cn_messages == 10 * costs.c_ho_cn);
  CHECK(total.per_event.at("handover") == 10);
}

TEST_CASE("a trajectory inside one UCA is CN-silent") {
  Topology topo = line_topology(5);
  UcaCosts costs;
  Ue u = ue_at(210.0);
  Uca uca = form_uca(u, topo, 3);  // {1,2,3}

  SignalingCounters total;
  // bounce between the member nodes without ever leaving the set
  for (NodeId target : {3u, 2u, 1u, 2u, 3u, 2u}) {
    u.position = {target * 100.0 + 5.0, 0.0};
    total += on_cell_change(uca, u, target, topo, costs);
  }
  CHECK(total.cn_messages == 0);
  CHECK(total.ran_messages == 6 * costs.c_intra);
  CHECK(uca.anchor == 2);
}

TEST_CASE("anchor always stays a member of the UCA") {
  Topology topo = line_topology(9);
  UcaCosts costs;
  RngStream rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    Ue u = ue_at(rng.uniform() * 800.0);
    std::size_t k = 1 + rng.below(4);
    Uca uca = form_uca(u, topo, k);
    CHECK(uca.nodes.count(uca.anchor) == 1);
    for (int step = 0; step < 40; ++step) {
      u.position = {rng.uniform() * 800.0, 0.0};
      NodeId target = topo.nearest(u.position);
      on_cell_change(uca, u, target, topo, costs);
      CHECK(uca.nodes.count(uca.anchor) == 1);
      CHECK(uca.nodes.count(target) == 1);
      CHECK(uca.nodes.size() == k);
    }
  }
}

TEST_CASE("UCA signaling never exceeds the handover baseline on long walks") {
  // with default costs (reform k+2 <= ho_ran for small k, pathswitch <= ho_cn)
  // the per-event cost is dominated, so any trajectory is dominated too
  Topology topo = line_topology(9);
  UcaCosts costs;
  RngStream rng(515);
  for (int trial = 0; trial < 30; ++trial) {
    Ue u = ue_at(rng.uniform() * 800.0);
    std::size_t k = 1 + rng.below(2);  // k + 2 <= 4 = c_ho_ran
    Uca uca = form_uca(u, topo, k);
    SignalingCounters with_uca, baseline;
    for (int step = 0; step < 200; ++step) {
      u.position = {rng.uniform() * 800.0, 0.0};
      NodeId target = topo.nearest(u.position);
      if (uca.nodes.count(target) && target == topo.nearest(u.position)) {
        // move is a cell change only when the serving node actually changes
      }
      with_uca += on_cell_change(uca, u, target, topo, costs);
      baseline += baseline_handover(costs);
    }
    CHECK(with_uca.ran_messages <= baseline.ran_messages);
    CHECK(with_uca.cn_messages <= baseline.cn_messages);
  }
}
