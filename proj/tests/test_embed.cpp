#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "nne/branch_bound.hpp"
#include "nne/embed_model.hpp"
#include "nne/enumerate.hpp"

using namespace nne;

namespace {

DeviceCatalog cat(double delta = 0.01) { return load_default_catalog(delta); }

TopologyConfig reduced_cfg(std::uint64_t seed = 1) {
  TopologyConfig cfg;
  cfg.devices_per_network = 6;
  cfg.relays_per_network = 1;
  cfg.area_side_m = 80;
  cfg.zigbee_range_m = 40;
  cfg.seed = seed;
  return cfg;
}

RequestConfig request_cfg(double demand = 1.0, double traffic = 50.0,
                          std::uint64_t seed = 1) {
  RequestConfig rc;
  rc.demand_fraction = demand;
  rc.traffic_kbps = traffic;
  rc.seed = seed;
  return rc;
}

}  // namespace

TEST_CASE("model counts match the construction") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto req = build_request(request_cfg(), t);

  auto bm = build_model(t, req, Restriction::kCloud, 0.01, c);
  CHECK(bm.handles.commodities.size() == 9);
  CHECK(bm.handles.placement.size() == 5);  // one allowed host
  int assign_rows = 0;
  for (const auto& r : bm.model.rows())
    assign_rows += r.name.rfind("assign[", 0) == 0 ? 1 : 0;
  CHECK(assign_rows == 5);

  auto opt = build_model(t, req, Restriction::kOptimal, 0.01, c);
  // 12 iot + 2 gw + 1 af + 1 cloud hosts
  CHECK(opt.handles.placement.size() == 5u * 16u);
  CHECK(opt.handles.throughput.size() == opt.handles.net_active.size());
}

TEST_CASE("capacity audit rejects unembeddable requests at build time") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto rc = request_cfg();
  rc.reference_capacity_mips = 120000.0;  // one node larger than the cloud server
  auto req = build_request(rc, t);
  CHECK_THROWS_AS(build_model(t, req, Restriction::kCloud, 0.01, c),
                  BuildInfeasible);
  // IoT tier: total demand 5*1200 fits, but a single 1200 MIPS node does not.
  auto rc2 = request_cfg();
  rc2.reference_capacity_mips = 1200.0;
  auto req2 = build_request(rc2, t);
  CHECK_THROWS_AS(build_model(t, req2, Restriction::kIotOnly, 0.01, c),
                  BuildInfeasible);
}

TEST_CASE("cloud restriction places everything on the cloud server") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto req = build_request(request_cfg(), t);
  auto bm = build_model(t, req, Restriction::kCloud, 0.01, c);

  SolverConfig scfg;
  auto r = solve_mip(bm.model, scfg);
  REQUIRE(r.status == MipResult::Status::kOptimal);
  auto e = decode(bm, r.values, t, req, c, 0.01);
  for (const auto& [v, host] : e.placement) CHECK(host == "cloud-0");

  // Anchor commodities ride the hierarchy; inter-neuron commodities are
  // co-located and carry nothing.
  for (const auto& [k, paths] : e.flows) {
    if (k.rfind("vl:", 0) == 0) {
      CHECK(paths.empty());
    } else {
      REQUIRE(paths.size() >= 1);
      double sum = 0.0;
      for (const auto& p : paths) sum += p.kbps;
      CHECK(sum == Catch::Approx(req.config.traffic_kbps).margin(1e-6));
    }
  }
  // Uplink path of the first source anchor must cross AP, ONU, OLT, metro,
  // cloud-router, cloud-switch in order.
  std::string up_id;
  for (const auto& a : req.anchors)
    if (a.kind == AnchorFlow::Kind::kSource) {
      up_id = "an:" + a.physical + ">" + a.virtual_node;
      break;
    }
  const auto& paths = e.flows.at(up_id);
  REQUIRE(paths.size() == 1);
  const auto& nodes = paths[0].nodes;
  std::vector<std::string> backbone;
  for (const auto& n : nodes)
    if (n.rfind("n0-d", 0) != 0 && n.rfind("n1-d", 0) != 0) backbone.push_back(n);
  REQUIRE(backbone.size() >= 6);
  CHECK(backbone[backbone.size() - 4] == "olt");
  CHECK(backbone[backbone.size() - 3] == "metro-switch");
  CHECK(backbone[backbone.size() - 2] == "cloud-router");
  CHECK(backbone.back() == "cloud-switch");
}

TEST_CASE("pon-only at full demand splits across fog hosts") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto req = build_request(request_cfg(1.0), t);
  auto bm = build_model(t, req, Restriction::kPonOnly, 0.01, c);
  auto r = solve_mip(bm.model);
  REQUIRE(r.status == MipResult::Status::kOptimal);
  auto e = decode(bm, r.values, t, req, c, 0.01);
  std::map<std::string, int> count;
  for (const auto& [v, host] : e.placement) ++count[host];
  // No single 2400 MIPS gateway fog can host more than two 1000 MIPS nodes;
  // the remainder lands on the other fog hosts.
  for (const auto& [host, n] : count)
    if (host.rfind("-gw") != std::string::npos) CHECK(n <= 2);
  int placed = 0;
  for (const auto& [host, n] : count) placed += n;
  CHECK(placed == 5);
}

TEST_CASE("restriction nesting: wider host sets never cost more") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(3), c);
  auto req = build_request(request_cfg(0.6, 50.0, 3), t);
  std::map<Restriction, double> obj;
  for (auto r : {Restriction::kIotOnly, Restriction::kIotPon,
                 Restriction::kPonOnly, Restriction::kOptimal,
                 Restriction::kCloud}) {
    auto bm = build_model(t, req, r, 0.01, c);
    auto res = solve_mip(bm.model);
    REQUIRE(res.status == MipResult::Status::kOptimal);
    obj[r] = res.objective;
  }
  CHECK(obj[Restriction::kOptimal] <= obj[Restriction::kIotOnly] + 1e-7);
  CHECK(obj[Restriction::kOptimal] <= obj[Restriction::kPonOnly] + 1e-7);
  CHECK(obj[Restriction::kOptimal] <= obj[Restriction::kCloud] + 1e-7);
  CHECK(obj[Restriction::kIotPon] <= obj[Restriction::kIotOnly] + 1e-7);
  CHECK(obj[Restriction::kIotPon] <= obj[Restriction::kPonOnly] + 1e-7);
}

TEST_CASE("decode refuses infeasible values") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto req = build_request(request_cfg(), t);
  auto bm = build_model(t, req, Restriction::kCloud, 0.01, c);
  std::vector<double> zeros(bm.model.num_vars(), 0.0);
  CHECK_THROWS_AS(decode(bm, zeros, t, req, c, 0.01), DecodeError);
}

TEST_CASE("embedding power formulas") {
  auto c = cat();
  Embedding empty;
  CHECK(embedding_power(empty, c, 0.01).total_w == 0.0);

  Embedding one;
  one.device_loads.push_back(
      {"dev", Role::kIotDevice, device::kIotRpiZero, device::kIotRpiZero,
       1000.0, 0.0});
  auto pb = embedding_power(one, c, 0.01);
  CHECK(pb.total_w == Catch::Approx(3.96).margin(1e-9));
  CHECK(pb.processing_w == Catch::Approx(3.96).margin(1e-9));

  Embedding cloud;
  cloud.device_loads.push_back(
      {"cloud-0", Role::kCloudServer, "", device::kCloudServer, 1000.0, 0.0});
  CHECK(embedding_power(cloud, c, 0.01).total_w ==
        Catch::Approx(78.0 + (52.0 / 108000.0) * 1000.0).epsilon(1e-9));

  // IoT device that both processes and forwards pays its idle once.
  Embedding both;
  both.device_loads.push_back(
      {"dev", Role::kIotDevice, device::kIotRpiZero, device::kIotRpiZero,
       500.0, 100.0});
  auto pb2 = embedding_power(both, c, 0.01);
  double epb = (3.96 - 0.5) / 250.0;
  CHECK(pb2.total_w ==
        Catch::Approx(0.5 + 0.00346 * 500.0 + epb * 100.0).margin(1e-9));
}

TEST_CASE("traffic scaling rescales flow rows and nothing else") {
  auto c = cat();
  auto t = build_topology(reduced_cfg(), c);
  auto req = build_request(request_cfg(1.0, 40.0), t);
  auto req2 = req;
  for (auto& l : req2.links) l.traffic_kbps *= 2.5;
  for (auto& a : req2.anchors) a.traffic_kbps *= 2.5;

  auto a = build_model(t, req, Restriction::kOptimal, 0.05, c);
  auto b = build_model(t, req2, Restriction::kOptimal, 0.05, c);
  REQUIRE(a.model.num_rows() == b.model.num_rows());
  REQUIRE(a.model.num_vars() == b.model.num_vars());
  for (int j = 0; j < a.model.num_vars(); ++j)
    CHECK(a.model.vars()[j].obj == b.model.vars()[j].obj);
  for (int i = 0; i < a.model.num_rows(); ++i) {
    const auto& ra = a.model.rows()[i];
    const auto& rb = b.model.rows()[i];
    bool flow_row = ra.name.rfind("flow[", 0) == 0;
    CHECK(rb.rhs == Catch::Approx(flow_row ? ra.rhs * 2.5 : ra.rhs));
    REQUIRE(ra.coeffs.size() == rb.coeffs.size());
    for (size_t kk = 0; kk < ra.coeffs.size(); ++kk) {
      bool placement_term =
          flow_row &&
          a.model.vars()[ra.coeffs[kk].first].name.rfind("x[", 0) == 0;
      double expect = placement_term ? ra.coeffs[kk].second * 2.5
                                     : ra.coeffs[kk].second;
      CHECK(rb.coeffs[kk].second == Catch::Approx(expect));
    }
  }
}

TEST_CASE("oracle equivalence on a reduced instance") {
  auto c = cat(0.10);
  auto t = build_topology(reduced_cfg(5), c);
  auto req = build_request(request_cfg(0.8, 50.0, 5), t);
  auto bm = build_model(t, req, Restriction::kPonOnly, 0.10, c);
  auto bb = solve_mip(bm.model);
  REQUIRE(bb.status == MipResult::Status::kOptimal);
  auto ex = enumerate_exact(bm.model, 64);
  REQUIRE(ex.status == MipResult::Status::kOptimal);
  CHECK(std::abs(bb.objective - ex.objective) /
            std::max(1.0, std::abs(ex.objective)) <
        1e-6);
}

TEST_CASE("full-size model solve timing probe", "[.perf]") {
  auto c = cat();
  TopologyConfig cfg;  // paper scale: 30 devices, 2 relays per network
  auto t = build_topology(cfg, c);
  auto req = build_request(request_cfg(1.0, 50.0), t);
  for (auto r : {Restriction::kCloud, Restriction::kPonOnly,
                 Restriction::kIotOnly, Restriction::kOptimal}) {
    auto bm = build_model(t, req, r, 0.01, c);
    auto start = std::chrono::steady_clock::now();
    SolverConfig scfg;
    scfg.rel_gap = 0.01;
    auto res = solve_mip(bm.model, scfg);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
    WARN(restriction_name(r)
         << ": " << bm.model.num_rows() << "x" << bm.model.num_vars()
         << " status " << to_string(res.status) << " obj " << res.objective
         << " gap " << res.gap << " nodes " << res.nodes << " in " << dt
         << " s");
  }
}
