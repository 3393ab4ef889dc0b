#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nne {

using json = nlohmann::json;

// Device class identifiers. The set mirrors the two parameter tables the
// default catalog is built from; configurations may add further classes.
namespace device {
inline const std::string kIotRpiZero = "iot-rpi-zero";
inline const std::string kIotCc3100 = "iot-cc3100mod";
inline const std::string kWifiAp = "wifi-ap";
inline const std::string kOnu = "onu";
inline const std::string kOlt = "olt";
inline const std::string kFogRouter = "fog-router";
inline const std::string kMetroSwitch = "metro-switch";
inline const std::string kCloudRouter = "cloud-router";
inline const std::string kCloudSwitch = "cloud-switch";
inline const std::string kGatewayFog = "gateway-fog";
inline const std::string kAccessFogServer = "access-fog-server";
inline const std::string kCloudServer = "cloud-server";
}  // namespace device

/// Load-proportional slope of a linear power profile, in watts per unit of
/// capacity (MIPS or kbps).
inline double derive_slope(double idle_w, double max_w, double capacity) {
  if (capacity <= 0.0)
    throw std::invalid_argument("derive_slope: capacity must be positive");
  if (max_w < idle_w)
    throw std::invalid_argument("derive_slope: max power below idle power");
  return (max_w - idle_w) / capacity;
}

/// Power/capacity parameters of one processing device class.
struct ProcessingProfile {
  std::string kind;
  double capacity_mips = 0.0;
  double idle_w = 0.0;
  double max_w = 0.0;
  /// Slope printed in the source table, if any. Kept only so the catalog
  /// validation report can flag rows whose printed slope is inconsistent
  /// with (max - idle) / capacity; never used in power evaluation.
  std::optional<double> table_w_per_mips;

  double slope_w_per_mips() const {
    return derive_slope(idle_w, max_w, capacity_mips);
  }
};

/// Power/capacity parameters of one networking device class. Bitrate
/// capacities are configuration inputs, not table values.
struct NetworkProfile {
  std::string kind;
  double idle_w = 0.0;
  double max_w = 0.0;
  double bitrate_kbps = 0.0;
  /// True iff the device class is shared infrastructure whose idle power is
  /// charged at the delta fraction.
  bool delta_shared = false;

  double energy_per_kbps() const {
    return derive_slope(idle_w, max_w, bitrate_kbps);
  }
};

/// Power drawn by a processing device hosting `load_mips` of work.
/// Inactive devices are off and draw nothing; an active one pays full idle
/// plus the load-proportional part.
inline double processing_power(const ProcessingProfile& p, double load_mips,
                               bool active) {
  if (load_mips < 0.0)
    throw std::invalid_argument("processing_power: negative load");
  if (load_mips > p.capacity_mips * (1.0 + 1e-9))
    throw std::domain_error("processing_power: load " +
                            std::to_string(load_mips) + " exceeds capacity of " +
                            p.kind);
  if (load_mips > 0.0 && !active)
    throw std::logic_error("processing_power: nonzero load on inactive device");
  if (!active) return 0.0;
  return p.idle_w + p.slope_w_per_mips() * load_mips;
}

/// Power drawn by a networking device carrying `throughput_kbps`. Shared
/// devices are charged `delta` of their idle power, all others the full idle.
inline double network_power(const NetworkProfile& p, double throughput_kbps,
                            bool active, double delta) {
  if (throughput_kbps < 0.0)
    throw std::invalid_argument("network_power: negative throughput");
  if (throughput_kbps > p.bitrate_kbps * (1.0 + 1e-9))
    throw std::domain_error("network_power: throughput " +
                            std::to_string(throughput_kbps) +
                            " exceeds capacity of " + p.kind);
  if (throughput_kbps > 0.0 && !active)
    throw std::logic_error("network_power: nonzero throughput on inactive device");
  if (!active) return 0.0;
  double share = p.delta_shared ? delta : 1.0;
  return share * p.idle_w + p.energy_per_kbps() * throughput_kbps;
}

/// All device classes known to a run plus the idle-sharing fraction delta.
/// Immutable after construction.
struct DeviceCatalog {
  std::map<std::string, ProcessingProfile> processing;
  std::map<std::string, NetworkProfile> network;
  double delta = 0.01;
  /// One line per table row whose printed slope disagrees with the derived
  /// slope by more than 1% relative.
  std::vector<std::string> slope_report;

  const ProcessingProfile& proc(const std::string& kind) const {
    auto it = processing.find(kind);
    if (it == processing.end())
      throw std::invalid_argument("catalog: unknown processing class " + kind);
    return it->second;
  }
  const NetworkProfile& net(const std::string& kind) const {
    auto it = network.find(kind);
    if (it == network.end())
      throw std::invalid_argument("catalog: unknown network class " + kind);
    return it->second;
  }
};

/// Builds the default catalog. `bitrate_overrides` replaces the default
/// bitrate capacity of named network classes (kbps).
inline DeviceCatalog load_default_catalog(
    double delta, const std::map<std::string, double>& bitrate_overrides = {}) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("catalog: delta must be in (0, 1]");

  DeviceCatalog cat;
  cat.delta = delta;

  auto add_proc = [&](const std::string& kind, double cap, double idle,
                      double max, double table_slope) {
    cat.processing[kind] =
        ProcessingProfile{kind, cap, idle, max, table_slope};
  };
  add_proc(device::kIotRpiZero, 1000.0, 0.5, 3.96, 3460e-6);
  add_proc(device::kIotCc3100, 856.0, 0.001, 0.11, 0.856);
  add_proc(device::kGatewayFog, 2400.0, 2.0, 12.5, 4375e-6);
  add_proc(device::kAccessFogServer, 34200.0, 57.0, 95.0, 1111e-6);
  add_proc(device::kCloudServer, 108000.0, 78.0, 130.0, 481e-6);

  // Bitrate capacities are not published; these defaults are configuration
  // values (zigbee 250 kbps, wifi 54 Mbps, PON ports 2.5 Gbps, core 10 Gbps).
  auto add_net = [&](const std::string& kind, double idle, double max,
                     double bitrate, bool shared) {
    double b = bitrate;
    auto it = bitrate_overrides.find(kind);
    if (it != bitrate_overrides.end()) b = it->second;
    if (b <= 0.0)
      throw std::invalid_argument("catalog: non-positive bitrate for " + kind);
    cat.network[kind] = NetworkProfile{kind, idle, max, b, shared};
  };
  add_net(device::kIotRpiZero, 0.5, 3.96, 250.0, false);
  add_net(device::kIotCc3100, 0.001, 0.11, 54000.0, false);
  add_net(device::kWifiAp, 0.34, 0.56, 54000.0, false);
  add_net(device::kOnu, 9.0, 15.0, 2500000.0, true);
  add_net(device::kOlt, 60.0, 1940.0, 2500000.0, true);
  add_net(device::kFogRouter, 11.7, 30.0, 10000000.0, true);
  add_net(device::kMetroSwitch, 128.0, 247.0, 10000000.0, true);
  add_net(device::kCloudRouter, 27.0, 30.0, 10000000.0, true);
  add_net(device::kCloudSwitch, 128.0, 423.0, 10000000.0, true);

  for (const auto& kv : bitrate_overrides)
    if (!cat.network.count(kv.first))
      throw std::invalid_argument("catalog: bitrate override for unknown class " +
                                  kv.first);

  for (const auto& [kind, p] : cat.processing) {
    if (!p.table_w_per_mips) continue;
    double derived = p.slope_w_per_mips();
    double table = *p.table_w_per_mips;
    double rel = std::abs(table - derived) / std::max(std::abs(derived), 1e-300);
    if (rel > 0.01) {
      cat.slope_report.push_back(
          kind + ": table slope " + std::to_string(table) +
          " W/MIPS disagrees with derived slope " + std::to_string(derived) +
          " W/MIPS; derived value used");
    }
  }
  return cat;
}

inline void to_json(json& j, const ProcessingProfile& p) {
  j = json{{"kind", p.kind},
           {"capacity_mips", p.capacity_mips},
           {"idle_w", p.idle_w},
           {"max_w", p.max_w},
           {"derived_w_per_mips", p.slope_w_per_mips()}};
  if (p.table_w_per_mips) j["table_w_per_mips"] = *p.table_w_per_mips;
}

inline void from_json(const json& j, ProcessingProfile& p) {
  j.at("kind").get_to(p.kind);
  j.at("capacity_mips").get_to(p.capacity_mips);
  j.at("idle_w").get_to(p.idle_w);
  j.at("max_w").get_to(p.max_w);
  if (j.contains("table_w_per_mips"))
    p.table_w_per_mips = j.at("table_w_per_mips").get<double>();
}

inline void to_json(json& j, const NetworkProfile& p) {
  j = json{{"kind", p.kind},
           {"idle_w", p.idle_w},
           {"max_w", p.max_w},
           {"bitrate_kbps", p.bitrate_kbps},
           {"delta_shared", p.delta_shared}};
}

inline void from_json(const json& j, NetworkProfile& p) {
  j.at("kind").get_to(p.kind);
  j.at("idle_w").get_to(p.idle_w);
  j.at("max_w").get_to(p.max_w);
  j.at("bitrate_kbps").get_to(p.bitrate_kbps);
  j.at("delta_shared").get_to(p.delta_shared);
}

inline void to_json(json& j, const DeviceCatalog& c) {
  j = json{{"delta", c.delta},
           {"processing", json::object()},
           {"network", json::object()},
           {"slope_report", c.slope_report}};
  for (const auto& [k, v] : c.processing) j["processing"][k] = v;
  for (const auto& [k, v] : c.network) j["network"][k] = v;
}

inline void from_json(const json& j, DeviceCatalog& c) {
  j.at("delta").get_to(c.delta);
  c.processing.clear();
  c.network.clear();
  for (const auto& [k, v] : j.at("processing").items())
    c.processing[k] = v.get<ProcessingProfile>();
  for (const auto& [k, v] : j.at("network").items())
    c.network[k] = v.get<NetworkProfile>();
  if (j.contains("slope_report"))
    j.at("slope_report").get_to(c.slope_report);
}

}  // namespace nne
