#pragma once

// Embedding MILP. Variables: placements x[v,p], flows f[k,l], processing
// activations a[p], network activations b[n], IoT single-idle binaries u[p],
// node throughputs thr[n]. Constraints:
//   C1 assignment, C2 processing capacity, C3 per-commodity flow
//   conservation, C4 link capacity, C5 throughput definition (ingress sum)
//   and bitrate coupling, C6 per-virtual-node activation, C7 IoT single-idle
//   coupling. Objective: load-proportional power plus charged idle shares.
// Build-time bound tightening pins activations of cut nodes every commodity
// must traverse.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nne/catalog.hpp"
#include "nne/milp.hpp"
#include "nne/request.hpp"
#include "nne/topology.hpp"
#include "nne/verify.hpp"

namespace nne {

/// Raised when a model is provably unembeddable before any solve; carries the
/// capacity audit in what().
struct BuildInfeasible : std::runtime_error {
  explicit BuildInfeasible(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when decoding detects an inconsistent solution (formulation or
/// solver bug, never a data error).
struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One routed traffic demand: a virtual link or an anchor flow.
struct Commodity {
  std::string id;
  bool src_fixed = false;
  int src_node = -1;          // transport node when fixed
  std::string src_vnode;      // virtual node when placeable
  bool dst_fixed = false;
  int dst_node = -1;
  std::string dst_vnode;
  double traffic_kbps = 0.0;
};

struct HandleMap {
  std::map<std::pair<std::string, std::string>, int> placement;  // (vnode, host)
  std::map<std::pair<std::string, std::string>, int> flow;  // (commodity, link)
  std::map<std::string, int> proc_active;                   // host -> a
  std::map<std::string, int> net_active;                    // transport -> b
  std::map<std::string, int> iot_active;                    // iot device -> u
  std::map<std::string, int> throughput;                    // transport -> thr
  std::vector<Commodity> commodities;
  // index-keyed views used by the decoder
  std::vector<int> sites;                         // host node indices
  std::vector<std::vector<int>> x_index;          // [vnode][site] -> var
  std::vector<std::vector<int>> f_index;          // [commodity][link] -> var or -1
};

struct BuiltModel {
  MilpModel model;
  HandleMap handles;
};

namespace embeddetail {

inline std::string link_key(const PhysicalTopology& t, const PhysicalLink& l) {
  return t.nodes[l.from].id + ">" + t.nodes[l.to].id;
}

/// Endpoint attachment candidates of one commodity side.
inline std::vector<int> side_candidates(const Commodity& k, bool src,
                                        const NNRequest& req,
                                        const PhysicalTopology& topo,
                                        const std::vector<int>& sites) {
  std::vector<int> out;
  bool fixed = src ? k.src_fixed : k.dst_fixed;
  if (fixed) {
    out.push_back(src ? k.src_node : k.dst_node);
    return out;
  }
  (void)req;
  std::set<int> uniq;
  for (int p : sites) uniq.insert(topo.attachment.at(p));
  out.assign(uniq.begin(), uniq.end());
  return out;
}

}  // namespace embeddetail

inline BuiltModel build_model(const PhysicalTopology& topo,
                              const NNRequest& req, Restriction restriction,
                              double delta, const DeviceCatalog& cat) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("build_model: delta must be in (0, 1]");
  std::vector<int> sites = processing_sites(topo, restriction);
  if (sites.empty()) throw std::invalid_argument("build_model: no allowed hosts");

  // Capacity audit: every virtual node must fit somewhere, and the total
  // demand must fit the allowed tier. Infeasibility is loud and early.
  {
    double total_cap = 0.0, max_cap = 0.0, max_demand = 0.0;
    for (int p : sites) {
      double c = cat.proc(topo.nodes[p].processing_profile).capacity_mips;
      total_cap += c;
      max_cap = std::max(max_cap, c);
    }
    for (const auto& v : req.nodes) max_demand = std::max(max_demand, v.demand_mips);
    if (req.total_demand() > total_cap + 1e-9 || max_demand > max_cap + 1e-9) {
      std::ostringstream os;
      os << "build_model: request cannot be embedded under restriction "
         << restriction_name(restriction) << ": total demand "
         << req.total_demand() << " MIPS vs allowed capacity " << total_cap
         << " MIPS across " << sites.size() << " hosts (largest host "
         << max_cap << " MIPS, largest virtual node " << max_demand << " MIPS)";
      throw BuildInfeasible(os.str());
    }
  }

  BuiltModel bm;
  MilpModel& m = bm.model;
  HandleMap& h = bm.handles;
  h.sites = sites;

  const int nv = static_cast<int>(req.nodes.size());
  const int nl = static_cast<int>(topo.links.size());
  std::vector<int> transport;
  for (int i = 0; i < static_cast<int>(topo.nodes.size()); ++i)
    if (topo.is_transport(i)) transport.push_back(i);

  // --- variables, placement block first so branching prefers x ------------
  h.x_index.assign(nv, std::vector<int>(sites.size(), -1));
  for (int vi = 0; vi < nv; ++vi) {
    const auto& v = req.nodes[vi];
    for (size_t si = 0; si < sites.size(); ++si) {
      int p = sites[si];
      double slope = cat.proc(topo.nodes[p].processing_profile).slope_w_per_mips();
      int var = m.add_var("x[" + v.id + "|" + topo.nodes[p].id + "]", 0, 1, true,
                          slope * v.demand_mips);
      h.placement[{v.id, topo.nodes[p].id}] = var;
      h.x_index[vi][si] = var;
    }
  }
  // Network activations before the implied a/u blocks: index order then
  // matches decision priority (placements, then routing, then activations
  // that minimization pins once the former are fixed).
  for (int nid : transport) {
    const auto& node = topo.nodes[nid];
    const auto& prof = cat.net(node.network_profile);
    bool iot = node.role == Role::kIotDevice;
    double share = prof.delta_shared ? delta : 1.0;
    int var = m.add_var("b[" + node.id + "]", 0, 1, true,
                        iot ? 0.0 : share * prof.idle_w);
    h.net_active[node.id] = var;
  }
  for (int p : sites) {
    const auto& node = topo.nodes[p];
    bool iot = node.role == Role::kIotDevice;
    double idle = cat.proc(node.processing_profile).idle_w;
    int var = m.add_var("a[" + node.id + "]", 0, 1, true, iot ? 0.0 : idle);
    h.proc_active[node.id] = var;
  }
  for (int p : topo.by_role(Role::kIotDevice)) {
    double idle = cat.proc(topo.nodes[p].processing_profile).idle_w;
    int var = m.add_var("u[" + topo.nodes[p].id + "]", 0, 1, true, idle);
    h.iot_active[topo.nodes[p].id] = var;
  }
  for (int nid : transport) {
    const auto& node = topo.nodes[nid];
    int var = m.add_var("thr[" + node.id + "]", 0.0, kInf, false,
                        cat.net(node.network_profile).energy_per_kbps());
    h.throughput[node.id] = var;
  }

  // Commodities: virtual links then anchor flows, in request order.
  for (const auto& l : req.links) {
    Commodity k;
    k.id = "vl:" + l.src + ">" + l.dst;
    k.src_vnode = l.src;
    k.dst_vnode = l.dst;
    k.traffic_kbps = l.traffic_kbps;
    h.commodities.push_back(std::move(k));
  }
  for (const auto& a : req.anchors) {
    Commodity k;
    k.traffic_kbps = a.traffic_kbps;
    if (a.kind == AnchorFlow::Kind::kSource) {
      k.id = "an:" + a.physical + ">" + a.virtual_node;
      k.src_fixed = true;
      k.src_node = topo.index_of(a.physical);
      k.dst_vnode = a.virtual_node;
    } else {
      k.id = "an:" + a.virtual_node + ">" + a.physical;
      k.src_vnode = a.virtual_node;
      k.dst_fixed = true;
      k.dst_node = topo.index_of(a.physical);
    }
    h.commodities.push_back(std::move(k));
  }
  const int nk = static_cast<int>(h.commodities.size());

  h.f_index.assign(nk, std::vector<int>(nl, -1));
  for (int ki = 0; ki < nk; ++ki)
    for (int li = 0; li < nl; ++li) {
      int var = m.add_var(
          "f[" + h.commodities[ki].id + "|" +
              embeddetail::link_key(topo, topo.links[li]) + "]",
          0.0, kInf, false, 0.0);
      h.flow[{h.commodities[ki].id, embeddetail::link_key(topo, topo.links[li])}] = var;
      h.f_index[ki][li] = var;
    }

  auto vindex = [&](const std::string& vid) {
    for (int vi = 0; vi < nv; ++vi)
      if (req.nodes[vi].id == vid) return vi;
    throw std::invalid_argument("build_model: unknown virtual node " + vid);
  };
  auto site_pos = [&](int p) {
    for (size_t si = 0; si < sites.size(); ++si)
      if (sites[si] == p) return static_cast<int>(si);
    return -1;
  };

  // --- C1 assignment --------------------------------------------------------
  for (int vi = 0; vi < nv; ++vi) {
    std::vector<std::pair<int, double>> row;
    for (size_t si = 0; si < sites.size(); ++si)
      row.push_back({h.x_index[vi][si], 1.0});
    m.add_row("assign[" + req.nodes[vi].id + "]", row, Sense::EQ, 1.0);
  }

  // --- C2 processing capacity ----------------------------------------------
  for (size_t si = 0; si < sites.size(); ++si) {
    int p = sites[si];
    std::vector<std::pair<int, double>> row;
    for (int vi = 0; vi < nv; ++vi)
      row.push_back({h.x_index[vi][si], req.nodes[vi].demand_mips});
    m.add_row("cap[" + topo.nodes[p].id + "]", row, Sense::LE,
              cat.proc(topo.nodes[p].processing_profile).capacity_mips);
  }

  // --- C3 flow conservation --------------------------------------------------
  // Per transport node n, commodity k:
  //   out - in - T*sum_{p@n} x[src,p] + T*sum_{p@n} x[dst,p]
  //     = T*([src fixed at n] - [dst fixed at n])
  // so a source at n injects +T and a sink at n absorbs T, whether the
  // endpoint is a fixed anchor or a placed virtual node.
  std::vector<std::vector<int>> attach_sites(topo.nodes.size());
  for (size_t si = 0; si < sites.size(); ++si)
    attach_sites[topo.attachment.at(sites[si])].push_back(static_cast<int>(si));

  std::vector<std::vector<int>> out_links(topo.nodes.size()),
      in_links(topo.nodes.size());
  for (int li = 0; li < nl; ++li) {
    out_links[topo.links[li].from].push_back(li);
    in_links[topo.links[li].to].push_back(li);
  }

  for (int ki = 0; ki < nk; ++ki) {
    const auto& k = h.commodities[ki];
    for (int nid : transport) {
      std::vector<std::pair<int, double>> row;
      for (int li : out_links[nid]) row.push_back({h.f_index[ki][li], 1.0});
      for (int li : in_links[nid]) row.push_back({h.f_index[ki][li], -1.0});
      double rhs = 0.0;
      if (k.src_fixed) {
        if (k.src_node == nid) rhs += k.traffic_kbps;
      } else {
        int vi = vindex(k.src_vnode);
        for (int si : attach_sites[nid])
          row.push_back({h.x_index[vi][si], -k.traffic_kbps});
      }
      if (k.dst_fixed) {
        if (k.dst_node == nid) rhs -= k.traffic_kbps;
      } else {
        int vi = vindex(k.dst_vnode);
        for (int si : attach_sites[nid])
          row.push_back({h.x_index[vi][si], k.traffic_kbps});
      }
      m.add_row("flow[" + k.id + "|" + topo.nodes[nid].id + "]", row, Sense::EQ,
                rhs);
    }
  }

  // --- C4 link capacity -------------------------------------------------------
  for (int li = 0; li < nl; ++li) {
    std::vector<std::pair<int, double>> row;
    for (int ki = 0; ki < nk; ++ki) row.push_back({h.f_index[ki][li], 1.0});
    m.add_row("lcap[" + embeddetail::link_key(topo, topo.links[li]) + "]", row,
              Sense::LE, topo.links[li].capacity_kbps);
  }

  // --- C5 node throughput (ingress convention) -------------------------------
  for (int nid : transport) {
    const auto& node = topo.nodes[nid];
    std::vector<std::pair<int, double>> def{{h.throughput[node.id], 1.0}};
    for (int ki = 0; ki < nk; ++ki)
      for (int li : in_links[nid]) def.push_back({h.f_index[ki][li], -1.0});
    m.add_row("thrdef[" + node.id + "]", def, Sense::EQ, 0.0);
    m.add_row("thrcap[" + node.id + "]",
              {{h.throughput[node.id], 1.0},
               {h.net_active[node.id], -cat.net(node.network_profile).bitrate_kbps}},
              Sense::LE, 0.0);
  }

  // --- C6 processing activation ----------------------------------------------
  for (int vi = 0; vi < nv; ++vi)
    for (size_t si = 0; si < sites.size(); ++si)
      m.add_row("act[" + req.nodes[vi].id + "|" + topo.nodes[sites[si]].id + "]",
                {{h.x_index[vi][si], 1.0},
                 {h.proc_active[topo.nodes[sites[si]].id], -1.0}},
                Sense::LE, 0.0);

  // --- C7 IoT single-idle coupling ---------------------------------------------
  for (int p : topo.by_role(Role::kIotDevice)) {
    const auto& id = topo.nodes[p].id;
    int u = h.iot_active[id];
    if (h.proc_active.count(id))
      m.add_row("idle-proc[" + id + "]", {{h.proc_active[id], 1.0}, {u, -1.0}},
                Sense::LE, 0.0);
    m.add_row("idle-net[" + id + "]", {{h.net_active[id], 1.0}, {u, -1.0}},
              Sense::LE, 0.0);
  }

  // --- build-time bound tightening: structurally forced activations ---------
  // A transport node whose removal separates every possible (source, sink)
  // attachment pair of a commodity must carry that commodity's full rate.
  {
    std::vector<std::vector<int>> adj(topo.nodes.size());
    for (const auto& l : topo.links) adj[l.from].push_back(l.to);
    std::vector<double> forced(topo.nodes.size(), 0.0);
    std::vector<int> comp(topo.nodes.size());
    for (int nid : transport) {
      // Component labels of the transport graph with nid removed.
      std::fill(comp.begin(), comp.end(), -1);
      int label = 0;
      for (int s : transport) {
        if (s == nid || comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = label;
        while (!stack.empty()) {
          int uu = stack.back();
          stack.pop_back();
          for (int vv : adj[uu])
            if (vv != nid && comp[vv] < 0) { comp[vv] = label; stack.push_back(vv); }
        }
        ++label;
      }
      for (int ki = 0; ki < nk; ++ki) {
        const auto& k = h.commodities[ki];
        auto srcs = embeddetail::side_candidates(k, true, req, topo, sites);
        auto dsts = embeddetail::side_candidates(k, false, req, topo, sites);
        bool all_forced = true;
        for (int s : srcs) {
          for (int d : dsts) {
            bool pair_forced =
                s != d && s != nid && (d == nid || comp[s] != comp[d]);
            if (!pair_forced) { all_forced = false; break; }
          }
          if (!all_forced) break;
        }
        if (all_forced) forced[nid] += k.traffic_kbps;
      }
    }
    for (int nid : transport) {
      if (forced[nid] <= 0.0) continue;
      const auto& id = topo.nodes[nid].id;
      int thr = h.throughput[id];
      m.set_bounds(thr, forced[nid], m.vars()[thr].ub);
      m.set_bounds(h.net_active[id], 1.0, 1.0);
      if (topo.nodes[nid].role == Role::kIotDevice)
        m.set_bounds(h.iot_active[id], 1.0, 1.0);
    }
  }

  return bm;
}

// --- embedding --------------------------------------------------------------

struct DeviceLoad {
  std::string node;
  Role role = Role::kIotDevice;
  std::string network_profile;     // empty if none
  std::string processing_profile;  // empty if none
  double mips = 0.0;
  double kbps = 0.0;
};

struct FlowPath {
  std::vector<std::string> nodes;  // transport nodes, source first
  double kbps = 0.0;
};

struct PowerBreakdown {
  std::map<std::string, double> per_device_w;
  double processing_w = 0.0;
  double network_w = 0.0;
  double total_w = 0.0;
};

struct Embedding {
  std::map<std::string, std::string> placement;        // vnode -> host
  std::map<std::string, std::vector<FlowPath>> flows;  // commodity -> paths
  std::vector<DeviceLoad> device_loads;                // active devices only
  PowerBreakdown power;
  double solver_objective = 0.0;
  int pruned_cycles = 0;
  double pruned_kbps = 0.0;
};

/// Power of an embedding from the catalog formulas alone. IoT devices that
/// both process and forward pay their idle power once; that idle lands in the
/// processing total when the device hosts a virtual node, otherwise in the
/// network total.
inline PowerBreakdown embedding_power(const Embedding& e,
                                      const DeviceCatalog& cat, double delta) {
  PowerBreakdown pb;
  for (const auto& d : e.device_loads) {
    double proc_w = 0.0, net_w = 0.0;
    if (d.role == Role::kIotDevice) {
      const auto& pp = cat.proc(d.processing_profile);
      const auto& np = cat.net(d.network_profile);
      bool active = d.mips > 0.0 || d.kbps > 0.0;
      proc_w = processing_power(pp, d.mips, d.mips > 0.0);
      net_w = network_power(np, d.kbps, d.kbps > 0.0, delta);
      // Single idle charge: drop the duplicate when both halves are active,
      // otherwise both formulas already charged at most one idle.
      if (d.mips > 0.0 && d.kbps > 0.0) net_w -= np.idle_w;
      if (!active) proc_w = net_w = 0.0;
    } else {
      if (!d.processing_profile.empty())
        proc_w = processing_power(cat.proc(d.processing_profile), d.mips,
                                  d.mips > 0.0);
      if (!d.network_profile.empty())
        net_w = network_power(cat.net(d.network_profile), d.kbps, d.kbps > 0.0,
                              delta);
    }
    pb.per_device_w[d.node] = proc_w + net_w;
    pb.processing_w += proc_w;
    pb.network_w += net_w;
  }
  pb.total_w = pb.processing_w + pb.network_w;
  return pb;
}

/// Decodes solver values into a domain embedding. Verifies feasibility,
/// decomposes flows into paths, recomputes power from the catalog and checks
/// it against the solver objective (1e-6 relative).
inline Embedding decode(const BuiltModel& bm, const std::vector<double>& values,
                        const PhysicalTopology& topo, const NNRequest& req,
                        const DeviceCatalog& cat, double delta) {
  const MilpModel& m = bm.model;
  const HandleMap& h = bm.handles;

  VerifyReport rep = verify(m, values, 1e-6);
  if (!rep.ok())
    throw DecodeError("decode: solution fails verification: " +
                      rep.violations[0] + " (+" +
                      std::to_string(rep.violations.size() - 1) + " more)");

  Embedding e;
  e.solver_objective = m.objective_value(values);

  const int nv = static_cast<int>(req.nodes.size());
  std::vector<int> host_of(nv, -1);
  for (int vi = 0; vi < nv; ++vi) {
    int chosen = -1;
    for (size_t si = 0; si < h.sites.size(); ++si) {
      if (values[h.x_index[vi][si]] > 0.5) {
        if (chosen >= 0) throw DecodeError("decode: duplicate placement of " +
                                           req.nodes[vi].id);
        chosen = h.sites[si];
      }
    }
    if (chosen < 0)
      throw DecodeError("decode: no placement for " + req.nodes[vi].id);
    host_of[vi] = chosen;
    e.placement[req.nodes[vi].id] = topo.nodes[chosen].id;
  }

  auto vindex = [&](const std::string& vid) {
    for (int vi = 0; vi < nv; ++vi)
      if (req.nodes[vi].id == vid) return vi;
    throw DecodeError("decode: unknown virtual node " + vid);
  };

  std::vector<double> mips(topo.nodes.size(), 0.0), kbps(topo.nodes.size(), 0.0);
  for (int vi = 0; vi < nv; ++vi) mips[host_of[vi]] += req.nodes[vi].demand_mips;

  // Flow decomposition per commodity.
  const int nl = static_cast<int>(topo.links.size());
  for (size_t ki = 0; ki < h.commodities.size(); ++ki) {
    const auto& k = h.commodities[ki];
    double flow_tol = 1e-6 * std::max(1.0, k.traffic_kbps);
    std::vector<double> resid(nl, 0.0);
    double sum = 0.0;
    for (int li = 0; li < nl; ++li) {
      double f = values[h.f_index[ki][li]];
      if (f > flow_tol) { resid[li] = f; sum += f; }
    }
    int s = k.src_fixed ? k.src_node : topo.attachment.at(host_of[vindex(k.src_vnode)]);
    int d = k.dst_fixed ? k.dst_node : topo.attachment.at(host_of[vindex(k.dst_vnode)]);

    std::vector<std::vector<std::pair<int, int>>> out(topo.nodes.size());
    for (int li = 0; li < nl; ++li)
      if (resid[li] > 0.0) out[topo.links[li].from].push_back({topo.links[li].to, li});

    auto& paths = e.flows[k.id];
    double remaining = s == d ? 0.0 : k.traffic_kbps;
    while (remaining > flow_tol) {
      std::vector<int> path_links;
      std::vector<char> seen(topo.nodes.size(), 0);
      int cur = s;
      seen[cur] = 1;
      double push = remaining;
      while (cur != d) {
        int next = -1, nli = -1;
        for (auto& [to, li] : out[cur])
          if (resid[li] > flow_tol && !seen[to]) { next = to; nli = li; break; }
        if (next < 0) break;
        path_links.push_back(nli);
        push = std::min(push, resid[nli]);
        cur = next;
        seen[cur] = 1;
      }
      if (cur != d || path_links.empty())
        break;  // leftover is circulation; prune below
      FlowPath fp;
      fp.kbps = push;
      fp.nodes.push_back(topo.nodes[s].id);
      for (int li : path_links) {
        resid[li] -= push;
        fp.nodes.push_back(topo.nodes[topo.links[li].to].id);
        kbps[topo.links[li].to] += push;  // ingress convention
      }
      paths.push_back(std::move(fp));
      remaining -= push;
    }
    if (remaining > flow_tol)
      throw DecodeError("decode: commodity " + k.id + " is short by " +
                        std::to_string(remaining) + " kbps");
    double leftover = 0.0;
    for (int li = 0; li < nl; ++li) leftover += resid[li];
    if (leftover > flow_tol) {
      ++e.pruned_cycles;
      e.pruned_kbps += leftover;
    }
  }

  for (int i = 0; i < static_cast<int>(topo.nodes.size()); ++i) {
    if (mips[i] <= 0.0 && kbps[i] <= 0.0) continue;
    DeviceLoad dl;
    dl.node = topo.nodes[i].id;
    dl.role = topo.nodes[i].role;
    dl.network_profile = topo.nodes[i].network_profile;
    dl.processing_profile = topo.nodes[i].processing_profile;
    dl.mips = mips[i];
    dl.kbps = kbps[i];
    e.device_loads.push_back(std::move(dl));
  }

  e.power = embedding_power(e, cat, delta);
  double scale = std::max(std::abs(e.solver_objective), 1e-9);
  if (e.pruned_kbps == 0.0 &&
      std::abs(e.power.total_w - e.solver_objective) / scale > 1e-6)
    throw DecodeError("decode: recomputed power " +
                      std::to_string(e.power.total_w) +
                      " W disagrees with solver objective " +
                      std::to_string(e.solver_objective) + " W");
  return e;
}

inline void to_json(json& j, const Embedding& e) {
  j = json{{"placement", e.placement},
           {"solver_objective_w", e.solver_objective},
           {"pruned_cycles", e.pruned_cycles},
           {"pruned_kbps", e.pruned_kbps}};
  json flows = json::object();
  for (const auto& [k, paths] : e.flows) {
    json jp = json::array();
    for (const auto& p : paths)
      jp.push_back(json{{"nodes", p.nodes}, {"kbps", p.kbps}});
    flows[k] = std::move(jp);
  }
  j["flows"] = std::move(flows);
  json loads = json::array();
  for (const auto& d : e.device_loads)
    loads.push_back(json{{"node", d.node},
                         {"role", role_name(d.role)},
                         {"mips", d.mips},
                         {"kbps", d.kbps},
                         {"watts", e.power.per_device_w.at(d.node)}});
  j["device_loads"] = std::move(loads);
  j["power"] = json{{"processing_w", e.power.processing_w},
                    {"network_w", e.power.network_w},
                    {"total_w", e.power.total_w}};
}

}  // namespace nne
