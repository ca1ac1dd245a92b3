#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmzi/compiler.hpp"
#include "gmzi/errors.hpp"
#include "gmzi/planner.hpp"
#include "gmzi/scheme.hpp"
#include "gmzi/tanner.hpp"

namespace gmzi {

// One module pair to be linked in a time slot. All data qubits participate
// (transversal payload). entangler_side picks which module's gadgets host
// the links on gadget-equipped schemes; 0 means the module whose name sorts
// first.
struct ModulePair {
  int first = 0;
  int second = 0;
  int entangler_side = 0;
};

struct PairingRequest {
  std::vector<ModulePair> pairs;
};

struct SlotAssignment {
  int gmzi = 0;
  std::string label;
  PhaseConfig phi;
  SignedPermutation sigma;
};

struct TimeSlot {
  std::vector<SlotAssignment> assignments;  // ascending gmzi id, all devices

  const SlotAssignment& on(int gmzi_id) const {
    for (const auto& a : assignments) {
      if (a.gmzi == gmzi_id) return a;
    }
    throw std::invalid_argument("TimeSlot: no assignment for gmzi " +
                                std::to_string(gmzi_id));
  }
};

// Per-GMZI control words realizing a request. Pairings, merges, and fanout
// distributions fit one time slot; a readout round visits each check's data
// qubits sequentially and fills one slot per step. Devices without demands
// idle at the all-zeros configuration (identity, plus sign).
struct Schedule {
  std::string scheme_name;
  std::vector<TimeSlot> slots;
};

namespace detail {

inline PhaseConfig idle_config(const GmziSpec& spec) {
  return PhaseConfig(std::vector<std::uint8_t>(
      static_cast<size_t>(spec.sim_size()), 0));
}

// First configuration under the documented tie-break: sign exponent 0 first,
// then the lowest big-endian value.
inline PhaseConfig pick_route_config(const GmziSpec& spec,
                                     const RouteRequest& request,
                                     const std::string& gmzi_label) {
  const int n = spec.sim_size();
  auto positive = solve_route(n, request, 0);
  if (!positive.empty()) return positive.front();
  auto any = solve_route(n, request);
  if (any.empty()) {
    std::string demands;
    for (const auto& [in, out] : request.demands) {
      demands += " " + std::to_string(in) + "->" + std::to_string(out);
    }
    throw UnsatisfiableRoute("no valid configuration on gmzi " + gmzi_label +
                             " satisfies" + demands);
  }
  return any.front();
}

// Translate per-GMZI demand lists into a full one-slot schedule.
inline TimeSlot assemble_slot(const SwitchScheme& scheme,
                              const std::map<int, RouteRequest>& demands) {
  TimeSlot slot;
  for (const auto& g : scheme.gmzis) {
    const auto it = demands.find(g.id);
    PhaseConfig phi = (it == demands.end() || it->second.demands.empty())
                          ? idle_config(g.spec)
                          : pick_route_config(g.spec, it->second, g.label);
    SlotAssignment a;
    a.gmzi = g.id;
    a.label = g.label;
    a.sigma = compile(phi);
    a.phi = std::move(phi);
    slot.assignments.push_back(std::move(a));
  }
  std::sort(slot.assignments.begin(), slot.assignments.end(),
            [](const SlotAssignment& a, const SlotAssignment& b) {
              return a.gmzi < b.gmzi;
            });
  return slot;
}

inline void check_pair_disjointness(const SwitchScheme& scheme,
                                    const PairingRequest& request) {
  std::set<int> used;
  for (const auto& pair : request.pairs) {
    for (int id : {pair.first, pair.second}) {
      scheme.module(id);  // throws for unknown ids
      if (!used.insert(id).second) {
        throw DisjointnessViolation("module " + scheme.module(id).name +
                                    " appears twice in one pairing request");
      }
    }
    if (pair.entangler_side != 0 && pair.entangler_side != pair.first &&
        pair.entangler_side != pair.second) {
      throw std::invalid_argument("entangler side " +
                                  std::to_string(pair.entangler_side) +
                                  " is not a member of its pair");
    }
  }
}

// The gadget-hosting module of a pair: the requested override, or the module
// whose name sorts first.
inline int resolve_entangler_side(const SwitchScheme& scheme,
                                  const ModulePair& pair) {
  if (pair.entangler_side != 0) return pair.entangler_side;
  return scheme.module(pair.first).name <= scheme.module(pair.second).name
             ? pair.first
             : pair.second;
}

inline void add_demand(std::map<int, RouteRequest>& demands, int gmzi, int in,
                       int out) {
  demands[gmzi].demands.emplace_back(in, out);
}

// Both modules of a direct-transmission pair aim their qubit blocks at each
// other; a photon then crosses the sender's device forward and the
// receiver's backward along the same port map.
inline void direct_pair_demands(const SwitchScheme& scheme,
                                const ModulePair& pair, int block_size,
                                std::map<int, RouteRequest>& demands) {
  for (const auto [from, to] :
       {std::pair{pair.first, pair.second}, std::pair{pair.second, pair.first}}) {
    const int gmzi = scheme.module_gmzi(from).id;
    const int base = partner_block_base(scheme, from, to, block_size);
    for (int k = 1; k <= scheme.module(from).qubits; ++k) {
      add_demand(demands, gmzi, k, base + k);
    }
  }
}

// Gadget-equipped pair: the sender pushes its qubits through the direct
// inputs toward the entangler side, whose device routes the arrivals
// backward onto its gadget arms (inputs 1..q) while its own photons enter
// the arms without switching.
inline void equalized_pair_demands(const SwitchScheme& scheme,
                                   const ModulePair& pair,
                                   std::map<int, RouteRequest>& demands) {
  const int host = resolve_entangler_side(scheme, pair);
  const int sender = host == pair.first ? pair.second : pair.first;
  const int q = scheme.module(sender).qubits;
  const int host_gmzi = scheme.module_gmzi(host).id;
  const int sender_gmzi = scheme.module_gmzi(sender).id;
  const int host_base = partner_block_base(scheme, host, sender, q);
  const int sender_base = partner_block_base(scheme, sender, host, q);
  for (int k = 1; k <= q; ++k) {
    add_demand(demands, host_gmzi, k, host_base + k);
    add_demand(demands, sender_gmzi, q + k, sender_base + k);
  }
}

// Folded crossbar pair: every qubit link claims one loop (or loop gadget).
// loop_cursor tracks the next free loop per crossbar.
inline void spanke_pair_demands(const SwitchScheme& scheme,
                                const ModulePair& pair,
                                std::map<int, int>& loop_cursor,
                                std::map<int, RouteRequest>& demands) {
  const int q = scheme.module(pair.first).qubits;
  // Recover fabric geometry from the stored devices.
  const int span = scheme.gmzis.front().spec.outputs;
  const int crossbars = [&] {
    int routers = 0;
    for (const auto& g : scheme.gmzis) routers += g.spec.inputs == 1 ? 1 : 0;
    return routers / span;
  }();
  const bool monolithic = crossbars == 1;
  const auto router_id = [&](int crossbar, int position) {
    return (crossbar - 1) * span + position;
  };
  const auto combiner_id = [&](int crossbar, int position) {
    return crossbars * span + (crossbar - 1) * span + position;
  };
  const auto site_position = [&](int module, int qubit) {
    // Position of the site inside its crossbar.
    return monolithic ? (module - 1) * q + qubit : module;
  };

  for (int k = 1; k <= q; ++k) {
    const int crossbar = monolithic ? 1 : k;
    const int pos_a = site_position(pair.first, k);
    const int pos_b = site_position(pair.second, k);
    int& cursor = loop_cursor[crossbar];
    ++cursor;
    if (cursor > span / 2) {
      throw UnsatisfiableRoute("crossbar " + std::to_string(crossbar) +
                               " ran out of loop fibers");
    }
    const int left = 2 * cursor - 1;
    const int right = 2 * cursor;
    add_demand(demands, router_id(crossbar, pos_a), 1, left);
    add_demand(demands, router_id(crossbar, pos_b), 1, right);
    add_demand(demands, combiner_id(crossbar, left), pos_a, 1);
    add_demand(demands, combiner_id(crossbar, right), pos_b, 1);
  }
}

// One photon's demands along a mixed-graph path: enter from the module
// fiber, transit along arriving/departing fiber ports, and exit on the
// gadget arm of the final vertex.
inline void mixed_path_demands(const MixedGraph& graph, const PhotonPath& path,
                               std::map<int, RouteRequest>& demands) {
  const auto& v = path.vertices;
  for (size_t i = 0; i < v.size(); ++i) {
    const int vertex = v[i];
    const auto& ins = graph.in_neighbors(vertex);
    const auto& outs = graph.out_neighbors(vertex);
    int in_port = 1;  // module fiber
    if (i > 0) {
      const auto it = std::find(ins.begin(), ins.end(), v[i - 1]);
      in_port = 2 + static_cast<int>(it - ins.begin());
    }
    int out_port = static_cast<int>(outs.size()) + 1;  // gadget arm
    if (i + 1 < v.size()) {
      const auto it = std::find(outs.begin(), outs.end(), v[i + 1]);
      out_port = 1 + static_cast<int>(it - outs.begin());
    }
    demands[vertex].demands.emplace_back(in_port, out_port);
  }
}

// All demands of one GMZI must share a single XOR offset between 0-based
// input and output ports; that is exactly when one configuration serves
// them all.
inline bool demands_share_mask(const RouteRequest& request) {
  std::optional<std::uint64_t> mask;
  std::set<int> ins;
  std::set<int> outs;
  for (const auto& [in, out] : request.demands) {
    if (!ins.insert(in).second || !outs.insert(out).second) return false;
    const auto m = static_cast<std::uint64_t>((in - 1) ^ (out - 1));
    if (mask && *mask != m) return false;
    mask = m;
  }
  return true;
}

// Photon paths that may cross a device more than once but never reuse a
// fiber. A second transit is fine optically: the device applies its one
// configured port map to whichever input the photon arrives on.
inline void collect_fiber_distinct_paths(
    const MixedGraph& graph, int target, int max_traversals,
    std::vector<int>& current, std::set<std::pair<int, int>>& used,
    std::vector<PhotonPath>& found) {
  const int at = current.back();
  if (at == target) found.push_back(PhotonPath{current});
  if (static_cast<int>(current.size()) >= max_traversals) return;
  for (int next : graph.out_neighbors(at)) {
    const std::pair<int, int> fiber{at, next};
    if (used.count(fiber)) continue;
    used.insert(fiber);
    current.push_back(next);
    collect_fiber_distinct_paths(graph, target, max_traversals, current, used,
                                 found);
    current.pop_back();
    used.erase(fiber);
  }
}

// Like enumerate_pair_routes, but photons may revisit a device on distinct
// fibers. The wider pool matters only for a few crowded joint pairings.
inline std::vector<PairRoute> enumerate_revisiting_routes(
    const MixedGraph& graph, int u, int v, int max_traversals) {
  std::vector<PairRoute> routes;
  for (const auto& edge : graph.undirected_edges()) {
    for (const auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      std::vector<PhotonPath> first_paths;
      std::vector<PhotonPath> second_paths;
      std::vector<int> current = {a};
      std::set<std::pair<int, int>> used;
      collect_fiber_distinct_paths(graph, edge.first, max_traversals, current,
                                   used, first_paths);
      current = {b};
      used.clear();
      collect_fiber_distinct_paths(graph, edge.second, max_traversals, current,
                                   used, second_paths);
      for (const auto& pa : first_paths) {
        for (const auto& pb : second_paths) {
          auto fa = pa.fibers();
          auto fb = pb.fibers();
          std::sort(fa.begin(), fa.end());
          std::sort(fb.begin(), fb.end());
          std::vector<std::pair<int, int>> shared;
          std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(),
                                std::back_inserter(shared));
          if (shared.empty()) routes.push_back(PairRoute{edge, pa, pb});
        }
      }
    }
  }
  std::sort(routes.begin(), routes.end(),
            [](const PairRoute& a, const PairRoute& b) {
              if (a.total_traversals() != b.total_traversals()) {
                return a.total_traversals() < b.total_traversals();
              }
              if (a.entangler != b.entangler) return a.entangler < b.entangler;
              if (a.to_first.vertices != b.to_first.vertices) {
                return a.to_first.vertices < b.to_first.vertices;
              }
              return a.to_second.vertices < b.to_second.vertices;
            });
  return routes;
}

// Pick one route candidate per pair such that no fiber or gadget is shared
// and every vertex device is left with jointly solvable demands. Short
// simple routes almost always suffice; a handful of dense pairings need the
// wider fiber-distinct pool, so the search escalates through tiers.
inline bool place_mixed_routes(const MixedGraph& graph,
                               std::vector<std::vector<PairRoute>> candidates,
                               std::map<int, RouteRequest>& demands);

inline void mixed_pairing_demands(const SwitchScheme& scheme,
                                  const PairingRequest& request,
                                  std::map<int, RouteRequest>& demands) {
  const MixedGraph graph = mixed_graph_of(scheme);
  struct Tier {
    int max_traversals;
    bool revisiting;
  };
  for (const Tier tier : {Tier{4, false}, Tier{6, true}}) {
    std::vector<std::vector<PairRoute>> candidates;
    bool pool_complete = true;
    for (const auto& pair : request.pairs) {
      auto routes =
          tier.revisiting
              ? enumerate_revisiting_routes(graph, pair.first, pair.second,
                                            tier.max_traversals)
              : enumerate_pair_routes(graph, pair.first, pair.second,
                                      tier.max_traversals);
      if (routes.empty()) {
        pool_complete = false;
        break;
      }
      candidates.push_back(std::move(routes));
    }
    if (pool_complete && place_mixed_routes(graph, std::move(candidates), demands)) {
      return;
    }
  }
  throw UnsatisfiableRoute(
      "no conflict-free route combination realizes the requested pairing");
}

inline bool place_mixed_routes(const MixedGraph& graph,
                               std::vector<std::vector<PairRoute>> candidates,
                               std::map<int, RouteRequest>& demands) {
  std::vector<int> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return candidates[a].size() < candidates[b].size();
  });

  std::vector<const PairRoute*> chosen(candidates.size(), nullptr);
  std::set<std::pair<int, int>> used_fibers;
  std::set<std::pair<int, int>> used_entanglers;

  const auto solvable = [&]() {
    std::map<int, RouteRequest> joint;
    for (const PairRoute* route : chosen) {
      if (route == nullptr) continue;
      mixed_path_demands(graph, route->to_first, joint);
      mixed_path_demands(graph, route->to_second, joint);
    }
    for (const auto& [gmzi, request_] : joint) {
      (void)gmzi;
      if (!demands_share_mask(request_)) return false;
    }
    return true;
  };

  const auto fits = [&](const PairRoute& route) {
    if (used_entanglers.count(route.entangler)) return false;
    for (const auto& fiber : route.fibers()) {
      if (used_fibers.count(fiber)) return false;
    }
    return true;
  };

  const std::function<bool(size_t)> place = [&](size_t step) {
    if (step == order.size()) return true;
    const int pair_index = order[step];
    for (const PairRoute& route : candidates[pair_index]) {
      if (!fits(route)) continue;
      chosen[pair_index] = &route;
      if (!solvable()) {
        chosen[pair_index] = nullptr;
        continue;
      }
      used_entanglers.insert(route.entangler);
      const auto fibers = route.fibers();
      for (const auto& fiber : fibers) used_fibers.insert(fiber);
      if (place(step + 1)) return true;
      used_entanglers.erase(route.entangler);
      for (const auto& fiber : fibers) used_fibers.erase(fiber);
      chosen[pair_index] = nullptr;
    }
    return false;
  };

  if (!place(0)) return false;
  for (const PairRoute* route : chosen) {
    mixed_path_demands(graph, route->to_first, demands);
    mixed_path_demands(graph, route->to_second, demands);
  }
  return true;
}

}  // namespace detail

// Configures every device so the requested module pairs are linked in one
// time slot. Pairs must be disjoint; every device not involved idles at
// all-zeros.
inline Schedule schedule_pairing(const SwitchScheme& scheme,
                                 const PairingRequest& request) {
  detail::check_pair_disjointness(scheme, request);

  std::map<int, RouteRequest> demands;
  std::map<int, int> spanke_loop_cursor;
  for (const auto& pair : request.pairs) {
    switch (scheme.kind) {
      case SchemeKind::spanke_direct:
      case SchemeKind::spanke_probabilistic:
        detail::spanke_pair_demands(scheme, pair, spanke_loop_cursor, demands);
        break;
      case SchemeKind::gmzi_direct: {
        const int stride = scheme.gmzis.front().spec.outputs /
                           (static_cast<int>(scheme.modules.size()) - 1);
        detail::direct_pair_demands(scheme, pair, stride, demands);
        break;
      }
      case SchemeKind::gmzi_equalized:
        detail::equalized_pair_demands(scheme, pair, demands);
        break;
      case SchemeKind::gmzi_mixed_graph:
        break;  // handled jointly below
      default:
        throw std::invalid_argument(
            "schedule_pairing: scheme kind " + to_string(scheme.kind) +
            " is not a pairing fabric; use its dedicated scheduler");
    }
  }
  if (scheme.kind == SchemeKind::gmzi_mixed_graph && !request.pairs.empty()) {
    detail::mixed_pairing_demands(scheme, request, demands);
  }

  Schedule schedule;
  schedule.scheme_name = scheme.name;
  schedule.slots.push_back(detail::assemble_slot(scheme, demands));
  return schedule;
}

// Configures the five-module merge preset so the requested check-side module
// measures a merged X- or Z-type stabilizer with the data-side module. The
// check side hosts the gadgets; by default it is the pair member whose name
// sorts first.
inline Schedule schedule_merge(const SwitchScheme& scheme,
                               const ModulePair& pair, char basis) {
  if (scheme.kind != SchemeKind::gmzi_merge) {
    throw std::invalid_argument("schedule_merge: scheme is not the merge preset");
  }
  if (basis != 'X' && basis != 'Z') {
    throw std::invalid_argument("schedule_merge: basis must be 'X' or 'Z'");
  }
  if (pair.first == pair.second) {
    throw DisjointnessViolation("a module cannot merge with itself");
  }
  scheme.module(pair.first);
  scheme.module(pair.second);

  const int check = detail::resolve_entangler_side(scheme, pair);
  const int data = check == pair.first ? pair.second : pair.first;
  const int check_gmzi = scheme.module_gmzi(check).id;
  const int data_gmzi = scheme.module_gmzi(data).id;
  const int check_base = partner_block_base(scheme, check, data, 2);
  const int data_base = partner_block_base(scheme, data, check, 2);

  std::map<int, RouteRequest> demands;
  const int gadget_input = basis == 'X' ? 0 : 4;  // X arms at 1,2; Z arms at 5,6
  for (int k = 1; k <= 2; ++k) {
    detail::add_demand(demands, check_gmzi, gadget_input + k, check_base + k);
    detail::add_demand(demands, data_gmzi, 2 + k, data_base + k);
  }

  Schedule schedule;
  schedule.scheme_name = scheme.name;
  schedule.slots.push_back(detail::assemble_slot(scheme, demands));
  return schedule;
}

// One readout round: a set of checks measured together, each visiting its
// data qubits one per time step. visit_orders may reorder any check's
// data-qubit sequence (default: support ascending); the slot count is the
// largest weight in the round.
struct ReadoutRequest {
  std::vector<int> checks;  // 1-based indices into the Tanner graph's checks
  std::map<int, std::vector<int>> visit_orders;
};

inline Schedule schedule_stabilizer_readout(const TannerGraph& tanner,
                                            const ReadoutRequest& request) {
  const SwitchScheme scheme = build_stabilizer_scheme(tanner);
  const int n = tanner.n_data();

  std::vector<std::vector<int>> orders;
  for (size_t i = 0; i < request.checks.size(); ++i) {
    const int c = request.checks[i];
    if (c < 1 || c > static_cast<int>(tanner.checks().size())) {
      throw std::invalid_argument("readout round names unknown check " +
                                  std::to_string(c));
    }
    for (size_t j = 0; j < i; ++j) {
      if (request.checks[j] == c) {
        throw DisjointnessViolation("check " + std::to_string(c) +
                                    " appears twice in one round");
      }
      if (!TannerGraph::disjoint(tanner.checks()[request.checks[j] - 1],
                                 tanner.checks()[c - 1])) {
        throw DisjointnessViolation(
            "checks " + std::to_string(request.checks[j]) + " and " +
            std::to_string(c) + " share a data qubit");
      }
    }
    const auto it = request.visit_orders.find(c);
    std::vector<int> order =
        it != request.visit_orders.end() ? it->second : tanner.checks()[c - 1].support;
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != tanner.checks()[c - 1].support) {
      throw std::invalid_argument("visit order for check " + std::to_string(c) +
                                  " is not a permutation of its support");
    }
    orders.push_back(std::move(order));
  }

  int steps = 0;
  for (const auto& order : orders) {
    steps = std::max(steps, static_cast<int>(order.size()));
  }

  Schedule schedule;
  schedule.scheme_name = scheme.name;
  for (int step = 0; step < steps; ++step) {
    std::map<int, RouteRequest> demands;
    for (size_t i = 0; i < orders.size(); ++i) {
      if (step >= static_cast<int>(orders[i].size())) continue;
      const int c = request.checks[i];
      const int d = orders[i][step];
      const auto& support = tanner.checks()[c - 1].support;
      // Data-side slot: position of this check among the checks touching d.
      int data_slot = 0;
      for (int cc = 1; cc <= static_cast<int>(tanner.checks().size()); ++cc) {
        const auto& s = tanner.checks()[cc - 1].support;
        if (std::find(s.begin(), s.end(), d) == s.end()) continue;
        ++data_slot;
        if (cc == c) break;
      }
      const auto pos = std::find(support.begin(), support.end(), d);
      const int check_slot = 1 + static_cast<int>(pos - support.begin());
      detail::add_demand(demands, d, 1, data_slot);
      detail::add_demand(demands, n + c, check_slot, 1);
    }
    schedule.slots.push_back(detail::assemble_slot(scheme, demands));
  }
  if (schedule.slots.empty()) {
    schedule.slots.push_back(detail::assemble_slot(scheme, {}));
  }
  return schedule;
}

// Routes each factory output to its destination's block on the fanout
// device, packing states of a common destination in ascending factory order.
// assignment maps factory output (1..N) to destination (1..k) and must cover
// every output.
inline Schedule schedule_msd_distribution(int factory_outputs, int destinations,
                                          const std::map<int, int>& assignment) {
  const SwitchScheme scheme = build_msd_scheme(factory_outputs, destinations);
  if (static_cast<int>(assignment.size()) != factory_outputs) {
    throw std::invalid_argument(
        "msd assignment must cover every factory output");
  }
  std::map<int, int> next_rank;
  std::map<int, RouteRequest> demands;
  for (const auto& [output, destination] : assignment) {
    if (output < 1 || output > factory_outputs) {
      throw std::invalid_argument("msd assignment names unknown output " +
                                  std::to_string(output));
    }
    if (destination < 1 || destination > destinations) {
      throw std::invalid_argument("msd assignment names unknown destination " +
                                  std::to_string(destination));
    }
    const int rank = ++next_rank[destination];
    detail::add_demand(demands, 1, output,
                       (destination - 1) * factory_outputs + rank);
  }

  Schedule schedule;
  schedule.scheme_name = scheme.name;
  schedule.slots.push_back(detail::assemble_slot(scheme, demands));
  return schedule;
}

namespace detail {

class PhotonTracer {
 public:
  PhotonTracer(const SwitchScheme& scheme, const TimeSlot& slot)
      : scheme_(scheme), slot_(slot) {}

  // Terminal endpoint (module port or entangler arm) reached by a photon
  // inserted at a GMZI input port, under the slot's configurations.
  // Throws std::logic_error when the photon strands on a dark port.
  Endpoint from_input(int gmzi, int port) const {
    return forward(Endpoint{EndpointKind::gmzi_output, gmzi,
                            sigma(gmzi).apply(port)});
  }

 private:
  const Permutation& sigma(int gmzi) const { return slot_.on(gmzi).sigma.perm; }

  static Endpoint arm_endpoint(const EntanglerRecord& e, const Endpoint& at) {
    return Endpoint{EndpointKind::entangler_arm, e.id, e.arm1 == at ? 1 : 2};
  }

  // Photon emerging from a GMZI output port, traveling away from the device.
  Endpoint forward(Endpoint at) const {
    while (true) {
      if (const EntanglerRecord* e = scheme_.entangler_with_arm(at)) {
        return arm_endpoint(*e, at);
      }
      const Endpoint far = fiber_far_side(at);
      if (far.kind == EndpointKind::module_port) return far;
      if (far.kind == EndpointKind::gmzi_input) {
        at = Endpoint{EndpointKind::gmzi_output, far.id,
                      sigma(far.id).apply(far.port)};
        continue;
      }
      return backward(far.id, far.port);
    }
  }

  // Photon entering a GMZI backward through its output port.
  Endpoint backward(int gmzi, int port) const {
    const Endpoint exit{EndpointKind::gmzi_input, gmzi,
                        sigma(gmzi).inverse().apply(port)};
    if (const EntanglerRecord* e = scheme_.entangler_with_arm(exit)) {
      return arm_endpoint(*e, exit);
    }
    if (const InputWire* in = scheme_.input_at(exit.id, exit.port)) {
      return in->from;
    }
    for (const auto& w : scheme_.hardwires) {
      if (w.to == exit) return backward(w.gmzi, w.port);
    }
    throw std::logic_error("photon exited onto dark input " + to_string(exit));
  }

  // Far end of the fiber leaving an output port, whichever side keys it.
  Endpoint fiber_far_side(const Endpoint& at) const {
    if (const Hardwire* w = scheme_.hardwire_at(at.id, at.port)) return w->to;
    for (const auto& w : scheme_.hardwires) {
      if (w.to == at) {
        return Endpoint{EndpointKind::gmzi_output, w.gmzi, w.port};
      }
    }
    throw std::logic_error("photon stranded at " + to_string(at));
  }

  const SwitchScheme& scheme_;
  const TimeSlot& slot_;
};

}  // namespace detail

// Terminal endpoint reached by a photon inserted at `gmzi` input `port`
// under the slot's configurations: the module port or entangler arm where it
// lands after any chain of forward and backward device crossings.
inline Endpoint trace_photon(const SwitchScheme& scheme, const TimeSlot& slot,
                             int gmzi, int port) {
  return detail::PhotonTracer(scheme, slot).from_input(gmzi, port);
}

// Follows every photon of the requested pairing through the scheduled
// configurations and the hardwire map, and checks it lands exactly where the
// pairing demands: the partner's qubit fiber on direct fabrics, one arm of a
// gadget whose other arm serves the partner elsewhere. Throws
// std::logic_error on any mismatch; a passing run returns normally.
inline void verify_pairing_schedule(const SwitchScheme& scheme,
                                    const PairingRequest& request,
                                    const Schedule& schedule) {
  if (schedule.slots.size() != 1) {
    throw std::logic_error("pairing schedules occupy exactly one time slot");
  }
  const TimeSlot& slot = schedule.slots.front();
  const detail::PhotonTracer tracer(scheme, slot);

  const auto expect = [](const Endpoint& landed, const Endpoint& want,
                         const std::string& what) {
    if (!(landed == want)) {
      throw std::logic_error(what + ": landed at " + to_string(landed) +
                             ", wanted " + to_string(want));
    }
  };
  const auto arm_of = [&scheme](const Endpoint& arm) -> const Endpoint& {
    for (const auto& rec : scheme.entanglers) {
      if (rec.id == arm.id) return arm.port == 1 ? rec.arm1 : rec.arm2;
    }
    throw std::logic_error("unknown entangler " + std::to_string(arm.id));
  };
  // The single fiber attaching a module qubit to a device input.
  const auto attachment = [&scheme](int module, int qubit) {
    for (const auto& w : scheme.input_wires) {
      if (w.from == Endpoint{EndpointKind::module_port, module, qubit}) {
        return std::pair{w.gmzi, w.port};
      }
    }
    throw std::logic_error("module fiber not found");
  };

  for (const auto& pair : request.pairs) {
    const int q = scheme.module(pair.first).qubits;
    switch (scheme.kind) {
      case SchemeKind::spanke_direct:
      case SchemeKind::gmzi_direct: {
        for (int k = 1; k <= q; ++k) {
          const auto [gmzi, port] = attachment(pair.first, k);
          expect(tracer.from_input(gmzi, port),
                 {EndpointKind::module_port, pair.second, k},
                 "photon from qubit " + std::to_string(k));
        }
        break;
      }
      case SchemeKind::gmzi_equalized: {
        const int host = detail::resolve_entangler_side(scheme, pair);
        const int sender = host == pair.first ? pair.second : pair.first;
        for (int k = 1; k <= q; ++k) {
          // The sender's photon travels through its direct fiber (the
          // second input block); the host's photon feeds the gadget's other
          // arm without switching.
          const Endpoint landed =
              tracer.from_input(scheme.module_gmzi(sender).id, q + k);
          if (landed.kind != EndpointKind::entangler_arm) {
            throw std::logic_error("traveling photon landed at " +
                                   to_string(landed));
          }
          const Endpoint other = arm_of({landed.kind, landed.id,
                                         landed.port == 1 ? 2 : 1});
          expect(other, {EndpointKind::module_port, host, k},
                 "far gadget arm for qubit " + std::to_string(k));
        }
        break;
      }
      case SchemeKind::spanke_probabilistic:
      case SchemeKind::gmzi_mixed_graph: {
        for (int k = 1; k <= q; ++k) {
          const auto [gmzi_a, port_a] = attachment(pair.first, k);
          const auto [gmzi_b, port_b] = attachment(pair.second, k);
          const Endpoint landed_a = tracer.from_input(gmzi_a, port_a);
          const Endpoint landed_b = tracer.from_input(gmzi_b, port_b);
          if (landed_a.kind != EndpointKind::entangler_arm ||
              landed_b.kind != EndpointKind::entangler_arm ||
              landed_a.id != landed_b.id || landed_a.port == landed_b.port) {
            throw std::logic_error(
                "photons for qubit " + std::to_string(k) +
                " failed to meet at a shared gadget: " + to_string(landed_a) +
                " vs " + to_string(landed_b));
          }
        }
        break;
      }
      default:
        throw std::invalid_argument(
            "verify_pairing_schedule: not a pairing fabric");
    }
  }
}

}  // namespace gmzi
