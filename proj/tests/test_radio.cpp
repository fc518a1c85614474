#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slicesim/errors.hpp"
#include "slicesim/radio.hpp"

using namespace slicesim;

namespace {

Topology grid_topology_3x3(double spacing = 100.0) {
  Topology t;
  NodeId id = 0;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col)
      t.nodes.push_back({id++, {col * spacing, row * spacing}, id, false});
  return t;
}

}  // namespace

TEST_CASE("se mapping") {
  CHECK(spectral_efficiency_from_sinr(0.0, 6.0) == doctest::Approx(1.0));
  CHECK(spectral_efficiency_from_sinr(100.0, 6.0) == doctest::Approx(6.0));
  // monotone in sinr
  double prev = 0.0;
  for (double s = -30.0; s <= 60.0; s += 1.0) {
    double se = spectral_efficiency_from_sinr(s, 6.0);
    CHECK(se >= prev);
    CHECK(se <= 6.0);
    prev = se;
  }
}

TEST_CASE("step_channel determinism and zero-distance clamp") {
  Topology topo;
  topo.nodes.push_back({0, {50.0, 50.0}, 0, false});
  std::vector<Ue> ues(1);
  ues[0].id = 7;
  ues[0].position = {50.0, 50.0};  // exactly on the node
  ues[0].serving_nodes = {0};
  ChannelParams params;

  RngStream a(123), b(123), c(999);
  ChannelState s1 = step_channel(ues, topo, 4, params, a);
  ChannelState s2 = step_channel(ues, topo, 4, params, b);
  ChannelState s3 = step_channel(ues, topo, 4, params, c);
  bool all_equal = true, any_diff = false;
  for (std::uint32_t rb = 0; rb < 4; ++rb) {
    CHECK(std::isfinite(s1.sinr_db(7, 0, rb)));  // clamp at 1 m
    if (s1.sinr_db(7, 0, rb) != s2.sinr_db(7, 0, rb)) all_equal = false;
    if (s1.sinr_db(7, 0, rb) != s3.sinr_db(7, 0, rb)) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("undefined channel entry throws") {
  ChannelState st;
  CHECK_THROWS_AS(st.se(1, 2, 3), ValidationError);
  st.set_se(1, 2, 3, 2.0);
  CHECK(st.se(1, 2, 3) == doctest::Approx(2.0));
}

TEST_CASE("constant-se channel mode") {
  Topology topo;
  topo.nodes.push_back({0, {0.0, 0.0}, 0, false});
  std::vector<Ue> ues(1);
  ues[0].id = 1;
  ues[0].position = {500.0, 500.0};
  ChannelParams params;
  params.mode = ChannelParams::Mode::ConstantSe;
  params.constant_se = 2.0;
  RngStream rng(1);
  ChannelState st = step_channel(ues, topo, 2, params, rng);
  CHECK(st.se(1, 0, 0) == doctest::Approx(2.0));
  CHECK(st.se(1, 0, 1) == doctest::Approx(2.0));
}

TEST_CASE("periodic traffic emits one packet per period") {
  Flow f;
  f.id = 0;
  f.model = {TrafficModelKind::Periodic, 0.0, 800.0, 10.0, 0.0};
  std::vector<Flow> flows{f};
  RngStream rng(5);
  generate_traffic(flows, 0.0, 100.0, rng);
  CHECK(flows[0].queue.size() == 10);
  CHECK(flows[0].backlog_bits == doctest::Approx(8000.0));
  CHECK(flows[0].queue.front().arrival_ms == doctest::Approx(0.0));

  // continuing into the next span emits the next batch, no duplicates
  generate_traffic(flows, 100.0, 100.0, rng);
  CHECK(flows[0].queue.size() == 20);
}

TEST_CASE("periodic offset shifts the first packet") {
  Flow f;
  f.model = {TrafficModelKind::Periodic, 0.0, 100.0, 20.0, 10.0};
  std::vector<Flow> flows{f};
  RngStream rng(5);
  generate_traffic(flows, 0.0, 10.0, rng);
  CHECK(flows[0].queue.empty());
  generate_traffic(flows, 10.0, 10.0, rng);
  REQUIRE(flows[0].queue.size() == 1);
  CHECK(flows[0].queue.front().arrival_ms == doctest::Approx(10.0));
}

TEST_CASE("zero-rate poisson never arrives") {
  Flow f;
  f.model = {TrafficModelKind::PoissonPackets, 0.0, 500.0, 0.0, 0.0};
  std::vector<Flow> flows{f};
  RngStream rng(5);
  for (int w = 0; w < 50; ++w) generate_traffic(flows, w * 10.0, 10.0, rng);
  CHECK(flows[0].queue.empty());
}

TEST_CASE("full buffer keeps the surrogate backlog") {
  Flow f;
  std::vector<Flow> flows{f};
  RngStream rng(5);
  generate_traffic(flows, 0.0, 10.0, rng);
  CHECK(flows[0].backlog_bits == kFullBufferBits);
  flows[0].backlog_bits -= 1e6;
  generate_traffic(flows, 10.0, 10.0, rng);
  CHECK(flows[0].backlog_bits == kFullBufferBits);
}

TEST_CASE("poisson arrivals match the analytic mean over many seeds") {
  // Monte Carlo oracle: mean of 1000 seeds vs lambda = 1000 within 3 sigma
  const double rate = 100.0, span_ms = 10000.0;
  const int n_seeds = 1000;
  double total = 0.0;
  for (int s = 0; s < n_seeds; ++s) {
    Flow f;
    f.model = {TrafficModelKind::PoissonPackets, rate, 1.0, 0.0, 0.0};
    std::vector<Flow> flows{f};
    RngStream rng(1000 + s);
    generate_traffic(flows, 0.0, span_ms, rng);
    total += static_cast<double>(flows[0].queue.size());
  }
  double mean = total / n_seeds;
  double lambda = rate * span_ms / 1000.0;
  double sigma_of_mean = std::sqrt(lambda / n_seeds);
  CHECK(std::abs(mean - lambda) <= 3.0 * sigma_of_mean);
}

TEST_CASE("move_ues") {
  Topology topo = grid_topology_3x3();
  SUBCASE("stationary UE does not move") {
    std::vector<Ue> ues(1);
    ues[0].id = 0;
    ues[0].position = {10.0, 10.0};
    ues[0].speed_mps = 0.0;
    ues[0].serving_nodes = {0};
    RngStream rng(3);
    auto events = move_ues(ues, 10.0, topo, 200.0, 200.0, rng);
    CHECK(events.empty());
    CHECK(ues[0].position.x == doctest::Approx(10.0));
  }
  SUBCASE("crossing the midpoint emits exactly one cell change") {
    std::vector<Ue> ues(1);
    ues[0].id = 0;
    ues[0].position = {45.0, 0.0};
    ues[0].speed_mps = 10.0;  // 0.1 m per 10 ms window
    ues[0].serving_nodes = {0};
    ues[0].waypoint = Position{200.0, 0.0};
    RngStream rng(3);
    int changes = 0;
    for (int w = 0; w < 200; ++w) {
      ues[0].waypoint = Position{200.0, 0.0};  // pin the trajectory
      auto events = move_ues(ues, 1000.0, topo, 200.0, 200.0, rng);
      changes += static_cast<int>(events.size());
      if (ues[0].position.x > 60.0) break;
    }
    CHECK(changes == 1);
  }
  SUBCASE("dt must be positive") {
    std::vector<Ue> ues(1);
    RngStream rng(3);
    CHECK_THROWS_AS(move_ues(ues, 0.0, topo, 1.0, 1.0, rng), ValidationError);
  }
}

TEST_CASE("random waypoint eventually covers every node") {
  Topology topo = grid_topology_3x3(100.0);
  std::vector<Ue> ues(4);
  for (int i = 0; i < 4; ++i) {
    ues[i].id = i;
    ues[i].position = {10.0 * i, 5.0};
    ues[i].speed_mps = 30.0;
    ues[i].serving_nodes = {0};
  }
  RngStream rng(77);
  std::set<NodeId> seen;
  for (int w = 0; w < 5000 && seen.size() < topo.nodes.size(); ++w) {
    move_ues(ues, 100.0, topo, 200.0, 200.0, rng);
    for (const Ue& u : ues) seen.insert(topo.nearest(u.position));
  }
  CHECK(seen.size() == topo.nodes.size());
}

TEST_CASE("nearest_k is deterministic with id tie-break") {
  Topology topo;
  topo.nodes.push_back({2, {0.0, 1.0}, 0, false});
  topo.nodes.push_back({1, {0.0, -1.0}, 0, false});
  topo.nodes.push_back({0, {5.0, 0.0}, 0, false});
  auto k2 = topo.nearest_k({0.0, 0.0}, 2);
  CHECK(k2 == std::vector<NodeId>{1, 2});  // equidistant, lower id first
  CHECK_THROWS_AS(topo.nearest_k({0.0, 0.0}, 4), ValidationError);
}
