#pragma once

// Reference physical infrastructure: per-network Zigbee meshes of IoT
// devices and relays (random geometric graphs), Wi-Fi APs on ONUs, a single
// OLT with metro/cloud hierarchy behind it and fog processing tiers.

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nne/catalog.hpp"
#include "nne/rng.hpp"

namespace nne {

enum class Role {
  kIotDevice, kRelay, kWifiAp, kOnu, kGatewayFog, kOlt, kFogRouter,
  kAccessFogServer, kMetroSwitch, kCloudRouter, kCloudSwitch, kCloudServer,
};

inline const char* role_name(Role r) {
  switch (r) {
    case Role::kIotDevice: return "iot-device";
    case Role::kRelay: return "relay";
    case Role::kWifiAp: return "wifi-ap";
    case Role::kOnu: return "onu";
    case Role::kGatewayFog: return "gateway-fog";
    case Role::kOlt: return "olt";
    case Role::kFogRouter: return "fog-router";
    case Role::kAccessFogServer: return "access-fog-server";
    case Role::kMetroSwitch: return "metro-switch";
    case Role::kCloudRouter: return "cloud-router";
    case Role::kCloudSwitch: return "cloud-switch";
    case Role::kCloudServer: return "cloud-server";
  }
  return "?";
}

inline Role role_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Role::kCloudServer); ++i)
    if (s == role_name(static_cast<Role>(i))) return static_cast<Role>(i);
  throw std::invalid_argument("unknown role: " + s);
}

enum class Medium { kZigbee, kWifi, kFiber, kEthernet };

inline const char* medium_name(Medium m) {
  switch (m) {
    case Medium::kZigbee: return "zigbee";
    case Medium::kWifi: return "wifi";
    case Medium::kFiber: return "fiber";
    case Medium::kEthernet: return "ethernet";
  }
  return "?";
}

inline Medium medium_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Medium::kEthernet); ++i)
    if (s == medium_name(static_cast<Medium>(i))) return static_cast<Medium>(i);
  throw std::invalid_argument("unknown medium: " + s);
}

enum class Function { kSensing, kControl, kActuation };

inline const char* function_name(Function f) {
  switch (f) {
    case Function::kSensing: return "sensing";
    case Function::kControl: return "control";
    case Function::kActuation: return "actuation";
  }
  return "?";
}

inline Function function_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Function::kActuation); ++i)
    if (s == function_name(static_cast<Function>(i))) return static_cast<Function>(i);
  throw std::invalid_argument("unknown function: " + s);
}

struct PhysicalNode {
  std::string id;
  Role role = Role::kIotDevice;
  std::string network_profile;     // device class, empty if pure compute
  std::string processing_profile;  // device class, empty if pure transport
  std::vector<Function> functions;
  bool has_position = false;
  double x = 0.0, y = 0.0;
  int iot_network = -1;  // index of the IoT mesh, -1 outside the IoT layer

  bool has_function(Function f) const {
    return std::find(functions.begin(), functions.end(), f) != functions.end();
  }
};

struct PhysicalLink {
  int from = -1, to = -1;  // node indices, directed
  Medium medium = Medium::kZigbee;
  double capacity_kbps = 0.0;
};

struct TopologyConfig {
  int networks = 2;
  int devices_per_network = 30;
  int relays_per_network = 2;
  double area_side_m = 100.0;
  double zigbee_range_m = 30.0;
  int cloud_servers = 1;
  std::uint64_t seed = 1;
  /// capacity per medium in kbps; missing entries use the defaults below
  std::map<std::string, double> medium_capacity_kbps;

  double capacity(Medium m) const {
    auto it = medium_capacity_kbps.find(medium_name(m));
    if (it != medium_capacity_kbps.end()) return it->second;
    switch (m) {
      case Medium::kZigbee: return 250.0;
      case Medium::kWifi: return 54000.0;
      case Medium::kFiber: return 2500000.0;
      case Medium::kEthernet: return 10000000.0;
    }
    return 0.0;
  }
};

enum class Restriction { kIotOnly, kIotPon, kPonOnly, kOptimal, kCloud };

inline const char* restriction_name(Restriction r) {
  switch (r) {
    case Restriction::kIotOnly: return "iot-only";
    case Restriction::kIotPon: return "iot-pon";
    case Restriction::kPonOnly: return "pon-only";
    case Restriction::kOptimal: return "optimal";
    case Restriction::kCloud: return "cloud";
  }
  return "?";
}

inline Restriction restriction_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Restriction::kCloud); ++i)
    if (s == restriction_name(static_cast<Restriction>(i)))
      return static_cast<Restriction>(i);
  throw std::invalid_argument("unknown restriction: " + s);
}

struct PhysicalTopology {
  TopologyConfig config;
  std::vector<PhysicalNode> nodes;
  std::vector<PhysicalLink> links;
  std::map<int, int> attachment;  // processing node -> transport node

  int index_of(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].id == id) return i;
    throw std::invalid_argument("topology: unknown node id " + id);
  }
  std::vector<int> by_role(Role r) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].role == r) out.push_back(i);
    return out;
  }
  bool is_transport(int i) const { return !nodes[i].network_profile.empty(); }
  bool is_processing(int i) const { return !nodes[i].processing_profile.empty(); }

  /// Adjacency over the directed transport links: (neighbor, link index).
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(nodes.size());
    for (int l = 0; l < static_cast<int>(links.size()); ++l)
      adj[links[l].from].push_back({links[l].to, l});
    return adj;
  }
};

/// Processing-capable hosts a placement restriction allows.
inline std::vector<int> processing_sites(const PhysicalTopology& t,
                                         Restriction r) {
  std::vector<int> iot = t.by_role(Role::kIotDevice);
  std::vector<int> pon = t.by_role(Role::kGatewayFog);
  for (int i : t.by_role(Role::kAccessFogServer)) pon.push_back(i);
  std::vector<int> cloud = t.by_role(Role::kCloudServer);
  std::vector<int> out;
  switch (r) {
    case Restriction::kIotOnly: out = iot; break;
    case Restriction::kPonOnly: out = pon; break;
    case Restriction::kIotPon:
      out = iot;
      out.insert(out.end(), pon.begin(), pon.end());
      break;
    case Restriction::kCloud: out = cloud; break;
    case Restriction::kOptimal:
      out = iot;
      out.insert(out.end(), pon.begin(), pon.end());
      out.insert(out.end(), cloud.begin(), cloud.end());
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace topodetail {

inline bool mesh_connected(const std::vector<std::pair<double, double>>& pts,
                           double range) {
  int n = static_cast<int>(pts.size());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  double r2 = range * range;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (seen[v]) continue;
      double dx = pts[u].first - pts[v].first;
      double dy = pts[u].second - pts[v].second;
      if (dx * dx + dy * dy <= r2) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

}  // namespace topodetail

inline PhysicalTopology build_topology(const TopologyConfig& cfg,
                                       const DeviceCatalog& cat) {
  if (cfg.networks < 1 || cfg.devices_per_network < 1 ||
      cfg.relays_per_network < 1 || cfg.cloud_servers < 1)
    throw std::invalid_argument("topology: counts must be positive");
  if (!(cfg.zigbee_range_m > 0) || !(cfg.area_side_m > 0) ||
      cfg.zigbee_range_m >= cfg.area_side_m * 2)
    throw std::invalid_argument("topology: zigbee range must be in (0, 2*area)");
  for (const auto& kind :
       {device::kIotRpiZero, device::kIotCc3100, device::kWifiAp, device::kOnu,
        device::kOlt, device::kFogRouter, device::kMetroSwitch,
        device::kCloudRouter, device::kCloudSwitch})
    cat.net(kind);
  for (const auto& kind : {device::kIotRpiZero, device::kGatewayFog,
                           device::kAccessFogServer, device::kCloudServer})
    cat.proc(kind);

  PhysicalTopology t;
  t.config = cfg;

  // IoT meshes: positions resampled (seed + attempt) until connected.
  std::vector<std::vector<std::pair<double, double>>> mesh_pts(cfg.networks);
  for (int net = 0; net < cfg.networks; ++net) {
    int n = cfg.devices_per_network + cfg.relays_per_network;
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(net)) +
                     static_cast<std::uint64_t>(attempt));
      auto& pts = mesh_pts[net];
      pts.clear();
      for (int i = 0; i < n; ++i) {
        double x = rng.next_double() * cfg.area_side_m;
        double y = rng.next_double() * cfg.area_side_m;
        pts.push_back({x, y});
      }
      ok = topodetail::mesh_connected(pts, cfg.zigbee_range_m);
    }
    if (!ok)
      throw std::runtime_error(
          "topology: no connected mesh after 1000 samples (network " +
          std::to_string(net) + ")");
  }

  auto add_node = [&](PhysicalNode n) {
    t.nodes.push_back(std::move(n));
    return static_cast<int>(t.nodes.size()) - 1;
  };

  std::vector<std::vector<int>> mesh_ids(cfg.networks);
  for (int net = 0; net < cfg.networks; ++net) {
    for (int d = 0; d < cfg.devices_per_network; ++d) {
      PhysicalNode n;
      n.id = "n" + std::to_string(net) + "-d" +
             (d < 10 ? "0" : "") + std::to_string(d);
      n.role = Role::kIotDevice;
      n.network_profile = device::kIotRpiZero;
      n.processing_profile = device::kIotRpiZero;
      n.functions = {Function::kSensing, Function::kControl, Function::kActuation};
      n.has_position = true;
      n.x = mesh_pts[net][d].first;
      n.y = mesh_pts[net][d].second;
      n.iot_network = net;
      mesh_ids[net].push_back(add_node(std::move(n)));
    }
    for (int r = 0; r < cfg.relays_per_network; ++r) {
      PhysicalNode n;
      n.id = "n" + std::to_string(net) + "-r" + std::to_string(r);
      n.role = Role::kRelay;
      n.network_profile = device::kIotCc3100;
      n.has_position = true;
      n.x = mesh_pts[net][cfg.devices_per_network + r].first;
      n.y = mesh_pts[net][cfg.devices_per_network + r].second;
      n.iot_network = net;
      mesh_ids[net].push_back(add_node(std::move(n)));
    }
  }

  std::vector<int> aps(cfg.networks), onus(cfg.networks), gws(cfg.networks);
  for (int net = 0; net < cfg.networks; ++net) {
    std::string p = "n" + std::to_string(net) + "-";
    aps[net] = add_node({p + "ap", Role::kWifiAp, device::kWifiAp, "", {}, false, 0, 0, net});
    onus[net] = add_node({p + "onu", Role::kOnu, device::kOnu, "", {}, false, 0, 0, -1});
    gws[net] = add_node({p + "gw", Role::kGatewayFog, "", device::kGatewayFog, {}, false, 0, 0, -1});
  }
  int olt = add_node({"olt", Role::kOlt, device::kOlt, "", {}, false, 0, 0, -1});
  int fr = add_node({"fog-router", Role::kFogRouter, device::kFogRouter, "", {}, false, 0, 0, -1});
  int af = add_node({"access-fog", Role::kAccessFogServer, "", device::kAccessFogServer, {}, false, 0, 0, -1});
  int ms = add_node({"metro-switch", Role::kMetroSwitch, device::kMetroSwitch, "", {}, false, 0, 0, -1});
  int cr = add_node({"cloud-router", Role::kCloudRouter, device::kCloudRouter, "", {}, false, 0, 0, -1});
  int cs = add_node({"cloud-switch", Role::kCloudSwitch, device::kCloudSwitch, "", {}, false, 0, 0, -1});
  std::vector<int> clouds;
  for (int c = 0; c < cfg.cloud_servers; ++c)
    clouds.push_back(add_node({"cloud-" + std::to_string(c), Role::kCloudServer,
                               "", device::kCloudServer, {}, false, 0, 0, -1}));

  auto add_pair = [&](int a, int b, Medium m) {
    double cap = cfg.capacity(m);
    t.links.push_back({a, b, m, cap});
    t.links.push_back({b, a, m, cap});
  };

  double r2 = cfg.zigbee_range_m * cfg.zigbee_range_m;
  for (int net = 0; net < cfg.networks; ++net) {
    const auto& ids = mesh_ids[net];
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = i + 1; j < ids.size(); ++j) {
        const auto& a = t.nodes[ids[i]];
        const auto& b = t.nodes[ids[j]];
        double dx = a.x - b.x, dy = a.y - b.y;
        if (dx * dx + dy * dy <= r2) add_pair(ids[i], ids[j], Medium::kZigbee);
      }
    for (int r = 0; r < cfg.relays_per_network; ++r)
      add_pair(mesh_ids[net][cfg.devices_per_network + r], aps[net], Medium::kWifi);
    add_pair(aps[net], onus[net], Medium::kEthernet);
    add_pair(onus[net], olt, Medium::kFiber);
  }
  add_pair(olt, ms, Medium::kEthernet);
  add_pair(olt, fr, Medium::kEthernet);
  add_pair(ms, cr, Medium::kEthernet);
  add_pair(cr, cs, Medium::kEthernet);

  for (int net = 0; net < cfg.networks; ++net) {
    for (int id : mesh_ids[net])
      if (t.nodes[id].role == Role::kIotDevice) t.attachment[id] = id;
    t.attachment[gws[net]] = onus[net];
  }
  t.attachment[af] = fr;
  for (int c : clouds) t.attachment[c] = cs;
  return t;
}

/// Structural validation; the returned report is empty iff the topology is
/// sound.
inline std::vector<std::string> validate_topology(const PhysicalTopology& t) {
  std::vector<std::string> rep;
  int n = static_cast<int>(t.nodes.size());

  // Link symmetry (both directions with equal capacity) and index sanity.
  std::map<std::pair<int, int>, double> fw;
  for (const auto& l : t.links) {
    if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n || l.from == l.to) {
      rep.push_back("link with invalid endpoints");
      continue;
    }
    if (l.capacity_kbps <= 0) rep.push_back("non-positive link capacity");
    fw[{l.from, l.to}] = l.capacity_kbps;
  }
  for (const auto& [key, cap] : fw) {
    auto rev = fw.find({key.second, key.first});
    if (rev == fw.end())
      rep.push_back("asymmetric link " + t.nodes[key.first].id + " -> " +
                    t.nodes[key.second].id);
    else if (rev->second != cap)
      rep.push_back("capacity mismatch on " + t.nodes[key.first].id + " <-> " +
                    t.nodes[key.second].id);
  }

  // Profile presence per role.
  for (const auto& node : t.nodes) {
    bool net = !node.network_profile.empty();
    bool proc = !node.processing_profile.empty();
    switch (node.role) {
      case Role::kIotDevice:
        if (!net || !proc) rep.push_back(node.id + ": iot device needs both profiles");
        break;
      case Role::kGatewayFog:
      case Role::kAccessFogServer:
      case Role::kCloudServer:
        if (!proc || net) rep.push_back(node.id + ": processing tier profile mismatch");
        break;
      default:
        if (!net || proc) rep.push_back(node.id + ": transport role profile mismatch");
    }
  }

  // Attachments: every processing node maps to an existing transport node.
  for (int i = 0; i < n; ++i) {
    if (t.nodes[i].processing_profile.empty()) continue;
    auto it = t.attachment.find(i);
    if (it == t.attachment.end()) {
      rep.push_back(t.nodes[i].id + ": missing attachment");
      continue;
    }
    int a = it->second;
    if (a < 0 || a >= n || t.nodes[a].network_profile.empty())
      rep.push_back(t.nodes[i].id + ": attachment is not a transport node");
  }

  // Transport connectivity via BFS over links.
  std::vector<std::vector<int>> adj(n);
  for (const auto& l : t.links) adj[l.from].push_back(l.to);
  std::vector<int> transport;
  for (int i = 0; i < n; ++i)
    if (!t.nodes[i].network_profile.empty()) transport.push_back(i);
  if (!transport.empty()) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{transport[0]};
    seen[transport[0]] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
    }
    for (int i : transport)
      if (!seen[i]) rep.push_back(t.nodes[i].id + ": disconnected from transport graph");
  }

  // Every IoT device reaches a relay through zigbee links only.
  std::vector<std::vector<int>> zadj(n);
  for (const auto& l : t.links)
    if (l.medium == Medium::kZigbee) zadj[l.from].push_back(l.to);
  for (int i = 0; i < n; ++i) {
    if (t.nodes[i].role != Role::kIotDevice) continue;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{i};
    seen[i] = 1;
    bool found = false;
    while (!stack.empty() && !found) {
      int u = stack.back();
      stack.pop_back();
      if (t.nodes[u].role == Role::kRelay) { found = true; break; }
      for (int v : zadj[u])
        if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
    }
    if (!found) rep.push_back(t.nodes[i].id + ": no zigbee path to any relay");
  }

  // Inter-mesh traffic must cross the OLT: removing it separates meshes.
  auto olts = t.by_role(Role::kOlt);
  if (olts.size() == 1) {
    int olt = olts[0];
    std::vector<char> seen(n, 0);
    seen[olt] = 1;  // excluded
    for (int i = 0; i < n; ++i) {
      if (seen[i] || t.nodes[i].network_profile.empty()) continue;
      std::vector<int> comp, stack{i};
      seen[i] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int v : adj[u])
          if (!seen[v] && v != olt) { seen[v] = 1; stack.push_back(v); }
      }
      std::set<int> nets;
      for (int u : comp)
        if (t.nodes[u].iot_network >= 0) nets.insert(t.nodes[u].iot_network);
      if (nets.size() > 1)
        rep.push_back("meshes " + std::to_string(*nets.begin()) + " and others " +
                      "connected without the OLT");
    }
  }
  return rep;
}

// --- serialization ---------------------------------------------------------

inline void to_json(json& j, const TopologyConfig& c) {
  j = json{{"networks", c.networks},
           {"devices_per_network", c.devices_per_network},
           {"relays_per_network", c.relays_per_network},
           {"area_side_m", c.area_side_m},
           {"zigbee_range_m", c.zigbee_range_m},
           {"cloud_servers", c.cloud_servers},
           {"seed", c.seed},
           {"medium_capacity_kbps", c.medium_capacity_kbps}};
}

inline void from_json(const json& j, TopologyConfig& c) {
  c = TopologyConfig{};
  if (j.contains("networks")) j.at("networks").get_to(c.networks);
  if (j.contains("devices_per_network"))
    j.at("devices_per_network").get_to(c.devices_per_network);
  if (j.contains("relays_per_network"))
    j.at("relays_per_network").get_to(c.relays_per_network);
  if (j.contains("area_side_m")) j.at("area_side_m").get_to(c.area_side_m);
  if (j.contains("zigbee_range_m")) j.at("zigbee_range_m").get_to(c.zigbee_range_m);
  if (j.contains("cloud_servers")) j.at("cloud_servers").get_to(c.cloud_servers);
  if (j.contains("seed")) j.at("seed").get_to(c.seed);
  if (j.contains("medium_capacity_kbps"))
    j.at("medium_capacity_kbps").get_to(c.medium_capacity_kbps);
}

inline void to_json(json& j, const PhysicalTopology& t) {
  j = json{{"config", t.config}};
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    json jn{{"id", n.id}, {"role", role_name(n.role)}};
    if (!n.network_profile.empty()) jn["network_profile"] = n.network_profile;
    if (!n.processing_profile.empty())
      jn["processing_profile"] = n.processing_profile;
    if (!n.functions.empty()) {
      json fs = json::array();
      for (auto f : n.functions) fs.push_back(function_name(f));
      jn["functions"] = fs;
    }
    if (n.has_position) jn["position"] = {n.x, n.y};
    if (n.iot_network >= 0) jn["iot_network"] = n.iot_network;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  json links = json::array();
  for (const auto& l : t.links)
    links.push_back(json{{"from", t.nodes[l.from].id},
                         {"to", t.nodes[l.to].id},
                         {"medium", medium_name(l.medium)},
                         {"capacity_kbps", l.capacity_kbps}});
  j["links"] = std::move(links);
  json att = json::object();
  for (const auto& [p, a] : t.attachment) att[t.nodes[p].id] = t.nodes[a].id;
  j["attachment"] = std::move(att);
}

inline void from_json(const json& j, PhysicalTopology& t) {
  t = PhysicalTopology{};
  j.at("config").get_to(t.config);
  for (const auto& jn : j.at("nodes")) {
    PhysicalNode n;
    jn.at("id").get_to(n.id);
    n.role = role_from(jn.at("role").get<std::string>());
    if (jn.contains("network_profile"))
      jn.at("network_profile").get_to(n.network_profile);
    if (jn.contains("processing_profile"))
      jn.at("processing_profile").get_to(n.processing_profile);
    if (jn.contains("functions"))
      for (const auto& f : jn.at("functions"))
        n.functions.push_back(function_from(f.get<std::string>()));
    if (jn.contains("position")) {
      n.has_position = true;
      n.x = jn.at("position")[0].get<double>();
      n.y = jn.at("position")[1].get<double>();
    }
    if (jn.contains("iot_network")) jn.at("iot_network").get_to(n.iot_network);
    t.nodes.push_back(std::move(n));
  }
  for (const auto& jl : j.at("links")) {
    PhysicalLink l;
    l.from = t.index_of(jl.at("from").get<std::string>());
    l.to = t.index_of(jl.at("to").get<std::string>());
    l.medium = medium_from(jl.at("medium").get<std::string>());
    jl.at("capacity_kbps").get_to(l.capacity_kbps);
    t.links.push_back(l);
  }
  for (const auto& [pid, aid] : j.at("attachment").items())
    t.attachment[t.index_of(pid)] = t.index_of(aid.get<std::string>());
}

/// Plain-text edge list (one directed link per line) for external plotting.
inline std::string edge_list(const PhysicalTopology& t) {
  std::ostringstream os;
  for (const auto& l : t.links)
    os << t.nodes[l.from].id << " " << t.nodes[l.to].id << " "
       << medium_name(l.medium) << " " << l.capacity_kbps << "\n";
  return os.str();
}

}  // namespace nne
