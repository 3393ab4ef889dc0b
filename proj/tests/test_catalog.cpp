#include <catch2/catch_amalgamated.hpp>

#include "nne/catalog.hpp"
#include "nne/rng.hpp"

using namespace nne;

TEST_CASE("derive_slope matches the table rows") {
  CHECK(derive_slope(0.5, 3.96, 1000.0) == Catch::Approx(0.00346).margin(1e-12));
  CHECK(derive_slope(78.0, 130.0, 108000.0) ==
        Catch::Approx(4.8148e-4).epsilon(1e-4));
  CHECK(derive_slope(5.0, 5.0, 100.0) == 0.0);
  CHECK_THROWS_AS(derive_slope(1.0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_slope(3.0, 2.0, 10.0), std::invalid_argument);
}

TEST_CASE("processing power endpoints") {
  auto cat = load_default_catalog(0.01);
  const auto& rpi = cat.proc(device::kIotRpiZero);
  CHECK(processing_power(rpi, 1000.0, true) == Catch::Approx(3.96).margin(1e-12));
  CHECK(processing_power(rpi, 0.0, false) == 0.0);
  CHECK(processing_power(rpi, 600.0, true) ==
        Catch::Approx(0.5 + 0.00346 * 600.0).margin(1e-12));
  CHECK_THROWS_AS(processing_power(rpi, 1200.0, true), std::domain_error);
  CHECK_THROWS_AS(processing_power(rpi, 10.0, false), std::logic_error);
}

TEST_CASE("network power with idle sharing") {
  auto cat = load_default_catalog(0.01);
  const auto& olt = cat.net(device::kOlt);
  CHECK(network_power(olt, 0.0, true, 0.01) == Catch::Approx(0.6).margin(1e-12));
  const auto& ap = cat.net(device::kWifiAp);
  CHECK(network_power(ap, ap.bitrate_kbps, true, 0.37) ==
        Catch::Approx(0.56).margin(1e-12));
  CHECK(network_power(ap, 0.0, false, 0.5) == 0.0);
  CHECK_THROWS_AS(network_power(olt, olt.bitrate_kbps * 2, true, 0.01),
                  std::domain_error);
}

TEST_CASE("default catalog contents and slope report") {
  auto cat = load_default_catalog(0.05);
  CHECK(cat.processing.size() == 5);
  CHECK(cat.network.size() == 9);
  // delta=0.05 puts the OLT idle contribution at 3 W when active.
  CHECK(network_power(cat.net(device::kOlt), 0.0, true, cat.delta) ==
        Catch::Approx(3.0).margin(1e-12));
  // The CC3100MOD table slope cannot satisfy idle + slope*capacity = max.
  REQUIRE(cat.slope_report.size() == 1);
  CHECK(cat.slope_report[0].find("iot-cc3100mod") != std::string::npos);
  // Every other row's table slope agrees with the derived slope within 1%.
  for (const auto& [kind, p] : cat.processing) {
    if (kind == device::kIotCc3100 || !p.table_w_per_mips) continue;
    double rel = std::abs(*p.table_w_per_mips - p.slope_w_per_mips()) /
                 p.slope_w_per_mips();
    CHECK(rel < 0.01);
  }
}

TEST_CASE("catalog rejects bad inputs") {
  CHECK_THROWS_AS(load_default_catalog(0.0), std::invalid_argument);
  CHECK_THROWS_AS(load_default_catalog(1.5), std::invalid_argument);
  CHECK_THROWS_AS(load_default_catalog(0.01, {{"no-such-device", 100.0}}),
                  std::invalid_argument);
}

TEST_CASE("power curves are affine, non-decreasing, and hit both endpoints") {
  auto cat = load_default_catalog(0.10);
  for (const auto& [kind, p] : cat.processing) {
    CHECK(processing_power(p, p.capacity_mips, true) ==
          Catch::Approx(p.max_w).epsilon(1e-9));
    CHECK(processing_power(p, 0.0, true) == Catch::Approx(p.idle_w).margin(1e-12));
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
      double w = processing_power(p, p.capacity_mips * i / 10.0, true);
      CHECK(w >= prev);
      prev = w;
    }
  }
  for (const auto& [kind, p] : cat.network) {
    CHECK(network_power(p, p.bitrate_kbps, true, cat.delta) ==
          Catch::Approx(p.max_w - (p.delta_shared ? (1 - cat.delta) * p.idle_w : 0.0))
              .epsilon(1e-9));
    double share = p.delta_shared ? cat.delta : 1.0;
    CHECK(network_power(p, 0.0, true, cat.delta) ==
          Catch::Approx(share * p.idle_w).margin(1e-12));
  }
}

TEST_CASE("charged idle share is monotone in delta only for shared devices") {
  auto cat = load_default_catalog(0.01);
  for (const auto& [kind, p] : cat.network) {
    double w1 = network_power(p, 0.0, true, 0.01);
    double w2 = network_power(p, 0.0, true, 0.10);
    if (p.delta_shared)
      CHECK(w2 > w1);
    else
      CHECK(w2 == w1);
  }
}

TEST_CASE("catalog JSON round-trip preserves power on a load grid") {
  auto cat = load_default_catalog(0.05, {{device::kOlt, 1234567.0}});
  json j = cat;
  auto back = j.get<DeviceCatalog>();
  for (const auto& [kind, p] : cat.processing) {
    const auto& q = back.proc(kind);
    for (int i = 0; i < 100; ++i) {
      double load = p.capacity_mips * i / 99.0;
      CHECK(processing_power(p, load, true) == processing_power(q, load, true));
    }
  }
  for (const auto& [kind, p] : cat.network) {
    const auto& q = back.net(kind);
    for (int i = 0; i < 100; ++i) {
      double tput = p.bitrate_kbps * i / 99.0;
      CHECK(network_power(p, tput, true, cat.delta) ==
            network_power(q, tput, true, back.delta));
    }
  }
  CHECK(back.net(device::kOlt).bitrate_kbps == 1234567.0);
}

TEST_CASE("splitmix stream is stable") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 c(42);
  double d = c.next_double();
  CHECK(d >= 0.0);
  CHECK(d < 1.0);
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}
