#pragma once

// NN service requests: a layered virtual topology (input/hidden/output) with
// homogeneous MIPS demands, constant per-commodity traffic, and fixed
// sensor/actuator anchors spanning two IoT meshes.

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nne/rng.hpp"
#include "nne/topology.hpp"

namespace nne {

enum class Layer { kInput, kHidden, kOutput };

inline const char* layer_name(Layer l) {
  switch (l) {
    case Layer::kInput: return "input";
    case Layer::kHidden: return "hidden";
    case Layer::kOutput: return "output";
  }
  return "?";
}

inline Layer layer_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Layer::kOutput); ++i)
    if (s == layer_name(static_cast<Layer>(i))) return static_cast<Layer>(i);
  throw std::invalid_argument("unknown layer: " + s);
}

struct VirtualNode {
  std::string id;
  Layer layer = Layer::kHidden;
  double demand_mips = 0.0;
  Function function = Function::kControl;
  std::string anchor;  // physical node id; input/output layers only
};

struct VirtualLink {
  std::string src, dst;
  double traffic_kbps = 0.0;
};

struct AnchorFlow {
  enum class Kind { kSource, kSink };
  Kind kind = Kind::kSource;
  std::string physical;
  std::string virtual_node;
  double traffic_kbps = 0.0;
};

struct RequestConfig {
  int inputs = 2, hiddens = 2, outputs = 1;
  double demand_fraction = 1.0;          // of reference_capacity_mips, per node
  double reference_capacity_mips = 1000.0;
  double traffic_kbps = 50.0;            // constant across every commodity
  std::uint64_t seed = 1;
};

struct NNRequest {
  RequestConfig config;
  std::vector<VirtualNode> nodes;
  std::vector<VirtualLink> links;
  std::vector<AnchorFlow> anchors;

  const VirtualNode& node(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return n;
    throw std::invalid_argument("request: unknown virtual node " + id);
  }
  double total_demand() const {
    double s = 0.0;
    for (const auto& n : nodes) s += n.demand_mips;
    return s;
  }
};

inline NNRequest build_request(const RequestConfig& cfg,
                               const PhysicalTopology& topo) {
  if (cfg.inputs < 1 || cfg.hiddens < 1 || cfg.outputs < 1)
    throw std::invalid_argument("request: layer sizes must be positive");
  if (!(cfg.demand_fraction > 0) || !(cfg.reference_capacity_mips > 0) ||
      !(cfg.traffic_kbps > 0))
    throw std::invalid_argument("request: demands and traffic must be positive");
  if (topo.config.networks < 2)
    throw std::runtime_error("request: topology must span at least two IoT networks");

  // Anchor candidates per network, in node order for determinism.
  std::vector<std::vector<int>> sensing(topo.config.networks);
  std::vector<int> actuation;
  for (int i = 0; i < static_cast<int>(topo.nodes.size()); ++i) {
    const auto& n = topo.nodes[i];
    if (n.role != Role::kIotDevice) continue;
    if (n.has_function(Function::kSensing)) sensing[n.iot_network].push_back(i);
    if (n.has_function(Function::kActuation)) actuation.push_back(i);
  }

  SplitMix64 rng(derive_seed(cfg.seed, 0xA11C));
  std::set<int> used;
  double demand = cfg.demand_fraction * cfg.reference_capacity_mips;

  NNRequest req;
  req.config = cfg;

  for (int k = 0; k < cfg.inputs; ++k) {
    int net = k % topo.config.networks;  // round-robin: spans two networks
    std::vector<int> pool;
    for (int i : sensing[net])
      if (!used.count(i)) pool.push_back(i);
    if (pool.empty())
      throw std::runtime_error("request: not enough sensing anchors in network " +
                               std::to_string(net));
    int pick = pool[rng.next_below(pool.size())];
    used.insert(pick);
    req.nodes.push_back({"in" + std::to_string(k), Layer::kInput, demand,
                         Function::kSensing, topo.nodes[pick].id});
  }
  for (int k = 0; k < cfg.hiddens; ++k)
    req.nodes.push_back({"hid" + std::to_string(k), Layer::kHidden, demand,
                         Function::kControl, ""});
  for (int k = 0; k < cfg.outputs; ++k) {
    std::vector<int> pool;
    for (int i : actuation)
      if (!used.count(i)) pool.push_back(i);
    if (pool.empty())
      throw std::runtime_error("request: not enough actuation anchors");
    int pick = pool[rng.next_below(pool.size())];
    used.insert(pick);
    req.nodes.push_back({"out" + std::to_string(k), Layer::kOutput, demand,
                         Function::kActuation, topo.nodes[pick].id});
  }

  for (int i = 0; i < cfg.inputs; ++i)
    for (int h = 0; h < cfg.hiddens; ++h)
      req.links.push_back({"in" + std::to_string(i), "hid" + std::to_string(h),
                           cfg.traffic_kbps});
  for (int h = 0; h < cfg.hiddens; ++h)
    for (int o = 0; o < cfg.outputs; ++o)
      req.links.push_back({"hid" + std::to_string(h), "out" + std::to_string(o),
                           cfg.traffic_kbps});

  for (const auto& n : req.nodes) {
    if (n.layer == Layer::kInput)
      req.anchors.push_back({AnchorFlow::Kind::kSource, n.anchor, n.id,
                             cfg.traffic_kbps});
    if (n.layer == Layer::kOutput)
      req.anchors.push_back({AnchorFlow::Kind::kSink, n.anchor, n.id,
                             cfg.traffic_kbps});
  }
  return req;
}

/// Same request with every per-node demand set to
/// fraction * reference_capacity. Anchors, links, and traffic are untouched,
/// so sweep rows stay comparable across the demand grid.
inline NNRequest scale_demand(const NNRequest& req, double fraction) {
  if (!(fraction > 0)) throw std::invalid_argument("scale_demand: fraction <= 0");
  NNRequest out = req;
  out.config.demand_fraction = fraction;
  double demand = fraction * req.config.reference_capacity_mips;
  for (auto& n : out.nodes) n.demand_mips = demand;
  return out;
}

inline std::vector<std::string> validate_request(const NNRequest& req,
                                                 const PhysicalTopology& topo) {
  std::vector<std::string> rep;
  double traffic = -1.0;
  std::set<int> input_nets;

  for (const auto& n : req.nodes) {
    if (n.demand_mips <= 0) rep.push_back(n.id + ": non-positive demand");
    bool needs_anchor = n.layer != Layer::kHidden;
    if (needs_anchor == n.anchor.empty())
      rep.push_back(n.id + ": anchor present iff layer is input/output");
    Function expect = n.layer == Layer::kInput    ? Function::kSensing
                      : n.layer == Layer::kHidden ? Function::kControl
                                                  : Function::kActuation;
    if (n.function != expect)
      rep.push_back(n.id + ": function does not match layer");
    if (!n.anchor.empty()) {
      int idx = -1;
      try {
        idx = topo.index_of(n.anchor);
      } catch (const std::exception&) {
        rep.push_back(n.id + ": anchor " + n.anchor + " not in topology");
      }
      if (idx >= 0) {
        const auto& p = topo.nodes[idx];
        if (p.role != Role::kIotDevice)
          rep.push_back(n.id + ": anchor is not an iot device");
        else if (!p.has_function(n.function))
          rep.push_back(n.id + ": anchor lacks function " +
                        function_name(n.function));
        if (n.layer == Layer::kInput && p.iot_network >= 0)
          input_nets.insert(p.iot_network);
      }
    }
  }
  if (input_nets.size() < 2)
    rep.push_back("input anchors do not span two IoT networks");

  for (const auto& l : req.links) {
    Layer a, b;
    try {
      a = req.node(l.src).layer;
      b = req.node(l.dst).layer;
    } catch (const std::exception& e) {
      rep.push_back(e.what());
      continue;
    }
    bool ok = (a == Layer::kInput && b == Layer::kHidden) ||
              (a == Layer::kHidden && b == Layer::kOutput);
    if (!ok) rep.push_back("link " + l.src + "->" + l.dst + " skips a layer");
    if (traffic < 0) traffic = l.traffic_kbps;
    if (l.traffic_kbps != traffic)
      rep.push_back("link " + l.src + "->" + l.dst + " breaks constant traffic");
  }
  for (const auto& a : req.anchors) {
    if (traffic >= 0 && a.traffic_kbps != traffic)
      rep.push_back("anchor flow " + a.virtual_node + " breaks constant traffic");
    try {
      const auto& vn = req.node(a.virtual_node);
      bool src = a.kind == AnchorFlow::Kind::kSource;
      if (src && vn.layer != Layer::kInput)
        rep.push_back("source anchor flow on non-input " + vn.id);
      if (!src && vn.layer != Layer::kOutput)
        rep.push_back("sink anchor flow on non-output " + vn.id);
      if (vn.anchor != a.physical)
        rep.push_back("anchor flow endpoint mismatch for " + vn.id);
    } catch (const std::exception& e) {
      rep.push_back(e.what());
    }
  }
  return rep;
}

// --- serialization ---------------------------------------------------------

inline void to_json(json& j, const RequestConfig& c) {
  j = json{{"inputs", c.inputs},
           {"hiddens", c.hiddens},
           {"outputs", c.outputs},
           {"demand_fraction", c.demand_fraction},
           {"reference_capacity_mips", c.reference_capacity_mips},
           {"traffic_kbps", c.traffic_kbps},
           {"seed", c.seed}};
}

inline void from_json(const json& j, RequestConfig& c) {
  c = RequestConfig{};
  if (j.contains("inputs")) j.at("inputs").get_to(c.inputs);
  if (j.contains("hiddens")) j.at("hiddens").get_to(c.hiddens);
  if (j.contains("outputs")) j.at("outputs").get_to(c.outputs);
  if (j.contains("demand_fraction")) j.at("demand_fraction").get_to(c.demand_fraction);
  if (j.contains("reference_capacity_mips"))
    j.at("reference_capacity_mips").get_to(c.reference_capacity_mips);
  if (j.contains("traffic_kbps")) j.at("traffic_kbps").get_to(c.traffic_kbps);
  if (j.contains("seed")) j.at("seed").get_to(c.seed);
}

inline void to_json(json& j, const NNRequest& r) {
  j = json{{"config", r.config}};
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    json jn{{"id", n.id},
            {"layer", layer_name(n.layer)},
            {"demand_mips", n.demand_mips},
            {"function", function_name(n.function)}};
    if (!n.anchor.empty()) jn["anchor"] = n.anchor;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  json links = json::array();
  for (const auto& l : r.links)
    links.push_back(json{{"src", l.src}, {"dst", l.dst}, {"traffic_kbps", l.traffic_kbps}});
  j["links"] = std::move(links);
  json anchors = json::array();
  for (const auto& a : r.anchors)
    anchors.push_back(json{
        {"kind", a.kind == AnchorFlow::Kind::kSource ? "source" : "sink"},
        {"physical", a.physical},
        {"virtual", a.virtual_node},
        {"traffic_kbps", a.traffic_kbps}});
  j["anchors"] = std::move(anchors);
}

inline void from_json(const json& j, NNRequest& r) {
  r = NNRequest{};
  j.at("config").get_to(r.config);
  for (const auto& jn : j.at("nodes")) {
    VirtualNode n;
    jn.at("id").get_to(n.id);
    n.layer = layer_from(jn.at("layer").get<std::string>());
    jn.at("demand_mips").get_to(n.demand_mips);
    n.function = function_from(jn.at("function").get<std::string>());
    if (jn.contains("anchor")) jn.at("anchor").get_to(n.anchor);
    r.nodes.push_back(std::move(n));
  }
  for (const auto& jl : j.at("links")) {
    VirtualLink l;
    jl.at("src").get_to(l.src);
    jl.at("dst").get_to(l.dst);
    jl.at("traffic_kbps").get_to(l.traffic_kbps);
    r.links.push_back(std::move(l));
  }
  for (const auto& ja : j.at("anchors")) {
    AnchorFlow a;
    a.kind = ja.at("kind").get<std::string>() == "source"
                 ? AnchorFlow::Kind::kSource
                 : AnchorFlow::Kind::kSink;
    ja.at("physical").get_to(a.physical);
    ja.at("virtual").get_to(a.virtual_node);
    ja.at("traffic_kbps").get_to(a.traffic_kbps);
    r.anchors.push_back(std::move(a));
  }
}

}  // namespace nne
