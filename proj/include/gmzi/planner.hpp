#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmzi/gmzi_spec.hpp"
#include "gmzi/mixed_graph.hpp"
#include "gmzi/scheme.hpp"
#include "gmzi/tanner.hpp"

namespace gmzi {

struct SchemeParams {
  int module_count = 0;
  int qubits_per_module = 0;
  // Spanke fabrics: one folded crossbar over all sites (true) or one smaller
  // crossbar per qubit index (false).
  bool monolithic = true;
};

namespace detail {

inline std::string module_letter_name(int index) {
  if (index >= 1 && index <= 26) return std::string(1, char('A' + index - 1));
  return "M" + std::to_string(index);
}

// Order in which a module's output blocks are assigned to partner modules.
// The five-module doubled-input preset pins the hand-drawn order of the
// reference layout; every other size uses ascending partner ids.
inline std::vector<int> partner_order(int module_id, int module_count,
                                      bool five_module_preset) {
  if (five_module_preset && module_count == 5) {
    static const int preset[5][4] = {{2, 3, 4, 5},
                                     {1, 3, 4, 5},
                                     {1, 2, 5, 4},
                                     {1, 2, 5, 3},
                                     {1, 2, 3, 4}};
    const int* row = preset[module_id - 1];
    return std::vector<int>(row, row + 4);
  }
  std::vector<int> order;
  for (int j = 1; j <= module_count; ++j) {
    if (j != module_id) order.push_back(j);
  }
  return order;
}

// 0-based position of `partner` in the block order of `module_id`.
inline int partner_block_index(const std::vector<int>& order, int partner) {
  const auto it = std::find(order.begin(), order.end(), partner);
  if (it == order.end()) {
    throw std::logic_error("partner_block_index: partner not in order");
  }
  return static_cast<int>(it - order.begin());
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace detail

// First output port (exclusive base, 0-based offset) of the block that module
// `module_id` aims at `partner`, for a scheme whose per-module GMZIs allocate
// `block_size` contiguous output ports per partner.
inline int partner_block_base(const SwitchScheme& scheme, int module_id,
                              int partner, int block_size) {
  const bool preset =
      (scheme.kind == SchemeKind::gmzi_equalized ||
       scheme.kind == SchemeKind::gmzi_merge) &&
      static_cast<int>(scheme.modules.size()) == 5;
  const auto order = detail::partner_order(
      module_id, static_cast<int>(scheme.modules.size()), preset);
  return block_size * detail::partner_block_index(order, partner);
}

// Folded crossbar over all module sites (monolithic) or one folded crossbar
// per qubit index (split). Every site owns a 1->S router whose outputs fan
// out to all S->1 combiners; combiner outputs are hardwired pairwise into
// loop fibers (direct flavor) or meet at a two-photon gadget (probabilistic
// flavor). Each qubit couples to the fabric by a single fiber, so a directly
// transmitted photon crosses router and combiner forward, then the loop
// partner's combiner and the receiver's router backward: four layers.
inline SwitchScheme build_spanke_scheme(int module_count, int qubits_per_module,
                                        bool monolithic, bool probabilistic) {
  detail::require(module_count >= 2, "spanke: need at least 2 modules");
  detail::require(qubits_per_module >= 1, "spanke: need at least 1 qubit per module");
  const int m = module_count;
  const int q = qubits_per_module;
  const int sites = m * q;

  SwitchScheme s;
  s.kind = probabilistic ? SchemeKind::spanke_probabilistic
                         : SchemeKind::spanke_direct;
  s.name = std::string("spanke-") + (monolithic ? "monolithic" : "split") +
           (probabilistic ? "-bsm-" : "-") + std::to_string(m) + "x" +
           std::to_string(q);
  for (int i = 1; i <= m; ++i) {
    s.modules.push_back({i, detail::module_letter_name(i), q});
  }

  const auto site_module = [q](int site) { return (site - 1) / q + 1; };
  const auto site_qubit = [q](int site) { return (site - 1) % q + 1; };
  const auto site_label = [&](int site) {
    return detail::module_letter_name(site_module(site)) +
           std::to_string(site_qubit(site));
  };

  // Crossbars: one over all sites, or one per qubit index over the modules.
  // crossbar_site maps (crossbar, position) to the global site.
  const int crossbars = monolithic ? 1 : q;
  const int span = monolithic ? sites : m;
  detail::require(span % 2 == 0,
                  "spanke: folded loop pairing needs an even site count per crossbar");
  const auto crossbar_site = [&](int crossbar, int position) {
    return monolithic ? position : (position - 1) * q + crossbar;
  };

  const auto router_id = [&](int crossbar, int position) {
    return (crossbar - 1) * span + position;
  };
  const auto combiner_id = [&](int crossbar, int position) {
    return crossbars * span + (crossbar - 1) * span + position;
  };

  for (int c = 1; c <= crossbars; ++c) {
    for (int p = 1; p <= span; ++p) {
      const int site = crossbar_site(c, p);
      s.gmzis.push_back({router_id(c, p), "router " + site_label(site),
                         GmziSpec(1, span), site_module(site)});
    }
  }
  for (int c = 1; c <= crossbars; ++c) {
    for (int p = 1; p <= span; ++p) {
      const int site = crossbar_site(c, p);
      s.gmzis.push_back({combiner_id(c, p), "combiner " + site_label(site),
                         GmziSpec(span, 1), site_module(site)});
    }
  }

  for (int c = 1; c <= crossbars; ++c) {
    for (int p = 1; p <= span; ++p) {
      const int site = crossbar_site(c, p);
      s.input_wires.push_back(
          {router_id(c, p), 1,
           {EndpointKind::module_port, site_module(site), site_qubit(site)}});
      for (int t = 1; t <= span; ++t) {
        s.hardwires.push_back(
            {router_id(c, p), t,
             {EndpointKind::gmzi_input, combiner_id(c, t), p}});
      }
    }
    for (int loop = 1; loop <= span / 2; ++loop) {
      const int left = combiner_id(c, 2 * loop - 1);
      const int right = combiner_id(c, 2 * loop);
      if (probabilistic) {
        const int id = (c - 1) * (span / 2) + loop;
        s.entanglers.push_back({id, "bsm " + std::to_string(id),
                                {EndpointKind::gmzi_output, left, 1},
                                {EndpointKind::gmzi_output, right, 1}});
      } else {
        s.hardwires.push_back({left, 1, {EndpointKind::gmzi_output, right, 1}});
      }
    }
  }
  return s;
}

// One q -> stride*(m-1) GMZI per module, outputs grouped into stride-wide
// blocks in ascending partner order and hardwired block-to-block
// output-to-output with identity port matching. A photon crosses its own
// device forward and the partner's backward, landing on the partner's qubit
// fiber: two layers, no gadgets.
inline SwitchScheme build_gmzi_direct_scheme(int module_count,
                                             int qubits_per_module) {
  detail::require(module_count >= 2, "gmzi_direct: need at least 2 modules");
  detail::require(qubits_per_module >= 1, "gmzi_direct: need at least 1 qubit per module");
  const int m = module_count;
  const int q = qubits_per_module;
  const int stride = next_power_of_two(q);

  SwitchScheme s;
  s.kind = SchemeKind::gmzi_direct;
  s.name = "gmzi-direct-" + std::to_string(m) + "x" + std::to_string(q);
  for (int i = 1; i <= m; ++i) {
    const std::string name = detail::module_letter_name(i);
    s.modules.push_back({i, name, q});
    s.gmzis.push_back({i, name, GmziSpec(q, stride * (m - 1)), i});
    for (int k = 1; k <= q; ++k) {
      s.input_wires.push_back({i, k, {EndpointKind::module_port, i, k}});
    }
  }
  for (int i = 1; i <= m; ++i) {
    const auto order_i = detail::partner_order(i, m, false);
    for (int j = i + 1; j <= m; ++j) {
      const auto order_j = detail::partner_order(j, m, false);
      const int base_i = stride * detail::partner_block_index(order_i, j);
      const int base_j = stride * detail::partner_block_index(order_j, i);
      for (int k = 1; k <= stride; ++k) {
        s.hardwires.push_back(
            {i, base_i + k, {EndpointKind::gmzi_output, j, base_j + k}});
      }
    }
  }
  return s;
}

// One 2q -> q*(m-1) GMZI per module. Inputs 1..q sit behind the module's own
// two-photon gadgets, inputs q+1..2q are the direct qubit fibers; the same
// qubits feed both paths. Output blocks pair up with partner modules exactly
// as in the direct scheme, so a traveling photon crosses two layers and then
// exits the partner's input side straight into a gadget arm, while the
// partner's own photon reaches the other arm without touching any switch.
inline SwitchScheme build_gmzi_equalized_scheme(int module_count,
                                                int qubits_per_module) {
  detail::require(module_count >= 2, "gmzi_equalized: need at least 2 modules");
  detail::require(qubits_per_module >= 1,
                  "gmzi_equalized: need at least 1 qubit per module");
  const int m = module_count;
  const int q = qubits_per_module;

  SwitchScheme s;
  s.kind = SchemeKind::gmzi_equalized;
  s.name = "equalized-" + std::to_string(m) + "x" + std::to_string(q);
  for (int i = 1; i <= m; ++i) {
    const std::string name = detail::module_letter_name(i);
    s.modules.push_back({i, name, q});
    s.gmzis.push_back({i, name, GmziSpec(2 * q, q * (m - 1)), i});
    for (int k = 1; k <= q; ++k) {
      s.entanglers.push_back({(i - 1) * q + k,
                              name + "-bsm" + std::to_string(k),
                              {EndpointKind::module_port, i, k},
                              {EndpointKind::gmzi_input, i, k}});
      s.input_wires.push_back({i, q + k, {EndpointKind::module_port, i, k}});
    }
  }
  const bool preset = (m == 5);
  for (int i = 1; i <= m; ++i) {
    const auto order_i = detail::partner_order(i, m, preset);
    for (int j = i + 1; j <= m; ++j) {
      const auto order_j = detail::partner_order(j, m, preset);
      const int base_i = q * detail::partner_block_index(order_i, j);
      const int base_j = q * detail::partner_block_index(order_j, i);
      for (int k = 1; k <= q; ++k) {
        s.hardwires.push_back(
            {i, base_i + k, {EndpointKind::gmzi_output, j, base_j + k}});
      }
    }
  }
  return s;
}

// Five-module lattice-surgery preset: one 8->8 GMZI per module. Inputs 1,2
// sit behind the X-check gadgets, inputs 3,4 are the boundary data-qubit
// fibers, inputs 5,6 sit behind the Z-check gadgets (the same two data
// qubits feed all three paths; the second Z arm is physically redundant but
// kept wired), inputs 7,8 stay dark. Outputs form four two-port bundles
// hardwired to partner bundles in the preset partner order.
inline SwitchScheme build_gmzi_merge_scheme() {
  const int m = 5;
  SwitchScheme s;
  s.kind = SchemeKind::gmzi_merge;
  s.name = "merge-5";
  for (int i = 1; i <= m; ++i) {
    const std::string name = detail::module_letter_name(i);
    s.modules.push_back({i, name, 2});
    s.gmzis.push_back({i, name, GmziSpec(8, 8), i});
    for (int k = 1; k <= 2; ++k) {
      s.entanglers.push_back({(i - 1) * 4 + k, name + "-x" + std::to_string(k),
                              {EndpointKind::module_port, i, k},
                              {EndpointKind::gmzi_input, i, k}});
      s.entanglers.push_back({(i - 1) * 4 + 2 + k,
                              name + "-z" + std::to_string(k),
                              {EndpointKind::module_port, i, k},
                              {EndpointKind::gmzi_input, i, 4 + k}});
      s.input_wires.push_back({i, 2 + k, {EndpointKind::module_port, i, k}});
    }
  }
  for (int i = 1; i <= m; ++i) {
    const auto order_i = detail::partner_order(i, m, true);
    for (int j = i + 1; j <= m; ++j) {
      const auto order_j = detail::partner_order(j, m, true);
      const int base_i = 2 * detail::partner_block_index(order_i, j);
      const int base_j = 2 * detail::partner_block_index(order_j, i);
      for (int k = 1; k <= 2; ++k) {
        s.hardwires.push_back(
            {i, base_i + k, {EndpointKind::gmzi_output, j, base_j + k}});
      }
    }
  }
  return s;
}

// One single-qubit module per vertex of the mixed fiber/entangler graph.
// Each vertex GMZI takes the module fiber on input 1 and one arriving fiber
// per in-neighbor (sorted by source) on the remaining inputs; outputs carry
// one departing fiber per out-neighbor (sorted by destination) and finally
// the arm of the vertex's hardwired gadget.
inline SwitchScheme build_gmzi_mixed_graph_scheme(int module_count) {
  const MixedGraph graph = build_mixed_graph(module_count);
  const int n = graph.n_vertices();

  SwitchScheme s;
  s.kind = SchemeKind::gmzi_mixed_graph;
  s.name = "mixed-" + std::to_string(n);
  for (int v = 1; v <= n; ++v) {
    const std::string name = detail::module_letter_name(v);
    const int in_deg = static_cast<int>(graph.in_neighbors(v).size());
    const int out_deg = static_cast<int>(graph.out_neighbors(v).size());
    s.modules.push_back({v, name, 1});
    s.gmzis.push_back({v, name, GmziSpec(1 + in_deg, out_deg + 1), v});
    s.input_wires.push_back({v, 1, {EndpointKind::module_port, v, 1}});
  }
  for (int v = 1; v <= n; ++v) {
    const auto& outs = graph.out_neighbors(v);
    for (int r = 0; r < static_cast<int>(outs.size()); ++r) {
      const int w = outs[r];
      const auto& ins = graph.in_neighbors(w);
      const auto it = std::find(ins.begin(), ins.end(), v);
      const int arrival = 2 + static_cast<int>(it - ins.begin());
      s.hardwires.push_back(
          {v, r + 1, {EndpointKind::gmzi_input, w, arrival}});
    }
  }
  int next_entangler = 1;
  for (const auto& [a, b] : graph.undirected_edges()) {
    const int arm_a = static_cast<int>(graph.out_neighbors(a).size()) + 1;
    const int arm_b = static_cast<int>(graph.out_neighbors(b).size()) + 1;
    s.entanglers.push_back({next_entangler,
                            "bsm " + detail::module_letter_name(a) +
                                detail::module_letter_name(b),
                            {EndpointKind::gmzi_output, a, arm_a},
                            {EndpointKind::gmzi_output, b, arm_b}});
    ++next_entangler;
  }
  return s;
}

// One 1->degree GMZI per data qubit and one weight->1 GMZI per check. Data
// output slots follow ascending check index; check input slots follow the
// check's support in ascending data-qubit order. A readout photon always
// crosses exactly two layers, whatever the code.
inline SwitchScheme build_stabilizer_scheme(const TannerGraph& tanner) {
  SwitchScheme s;
  s.kind = SchemeKind::stabilizer_readout;
  s.name = "stabilizer-" + std::to_string(tanner.n_data()) + "q" +
           std::to_string(tanner.checks().size()) + "c";
  const int n = tanner.n_data();
  for (int d = 1; d <= n; ++d) {
    detail::require(tanner.degree(d) >= 1,
                    "stabilizer scheme: data qubit " + std::to_string(d) +
                        " is in no check");
    s.modules.push_back({d, "d" + std::to_string(d), 1});
    s.gmzis.push_back({d, "d" + std::to_string(d),
                       GmziSpec(1, tanner.degree(d)), d});
    s.input_wires.push_back({d, 1, {EndpointKind::module_port, d, 1}});
  }
  int seen_x = 0;
  int seen_z = 0;
  for (int c = 0; c < static_cast<int>(tanner.checks().size()); ++c) {
    const auto& check = tanner.checks()[c];
    const std::string name =
        (check.basis == 'X' ? "X" + std::to_string(++seen_x)
                            : "Z" + std::to_string(++seen_z));
    s.modules.push_back({n + c + 1, name, 1});
    s.gmzis.push_back({n + c + 1, name, GmziSpec(check.weight(), 1), n + c + 1});
    s.hardwires.push_back(
        {n + c + 1, 1, {EndpointKind::module_port, n + c + 1, 1}});
  }
  for (int d = 1; d <= n; ++d) {
    int slot = 0;
    for (int c = 0; c < static_cast<int>(tanner.checks().size()); ++c) {
      const auto& support = tanner.checks()[c].support;
      const auto it = std::find(support.begin(), support.end(), d);
      if (it == support.end()) continue;
      const int check_slot = 1 + static_cast<int>(it - support.begin());
      s.hardwires.push_back(
          {d, ++slot, {EndpointKind::gmzi_input, n + c + 1, check_slot}});
    }
  }
  return s;
}

// A single N -> k*N fanout GMZI at the factory. Output ports form k blocks
// of N, block d wired straight onto destination d's receive ports, so every
// distilled state crosses exactly one layer.
inline SwitchScheme build_msd_scheme(int factory_outputs, int destinations) {
  detail::require(factory_outputs >= 1, "msd: need at least 1 factory output");
  detail::require(destinations >= 1, "msd: need at least 1 destination");
  const int n = factory_outputs;
  const int k = destinations;

  SwitchScheme s;
  s.kind = SchemeKind::msd_distribution;
  s.name = "msd-" + std::to_string(n) + "to" + std::to_string(k);
  s.modules.push_back({1, "factory", n});
  s.gmzis.push_back({1, "fanout", GmziSpec(n, k * n), 1});
  for (int i = 1; i <= n; ++i) {
    s.input_wires.push_back({1, i, {EndpointKind::module_port, 1, i}});
  }
  for (int d = 1; d <= k; ++d) {
    s.modules.push_back({1 + d, detail::module_letter_name(d), n});
    for (int r = 1; r <= n; ++r) {
      s.hardwires.push_back(
          {1, (d - 1) * n + r, {EndpointKind::module_port, 1 + d, r}});
    }
  }
  return s;
}

// General entry point. For msd_distribution, qubits_per_module is the number
// of factory outputs and module_count the number of destinations; for
// stabilizer_readout, the nine-qubit surface-code preset is built (use
// build_stabilizer_scheme directly for other codes); gmzi_merge is the fixed
// five-module preset.
inline SwitchScheme build_scheme(SchemeKind kind, const SchemeParams& params) {
  switch (kind) {
    case SchemeKind::spanke_direct:
      return build_spanke_scheme(params.module_count, params.qubits_per_module,
                                 params.monolithic, false);
    case SchemeKind::spanke_probabilistic:
      return build_spanke_scheme(params.module_count, params.qubits_per_module,
                                 params.monolithic, true);
    case SchemeKind::gmzi_direct:
      return build_gmzi_direct_scheme(params.module_count,
                                      params.qubits_per_module);
    case SchemeKind::gmzi_equalized:
      return build_gmzi_equalized_scheme(params.module_count,
                                         params.qubits_per_module);
    case SchemeKind::gmzi_merge:
      detail::require(params.module_count == 0 || params.module_count == 5,
                      "gmzi_merge: the preset has exactly 5 modules");
      return build_gmzi_merge_scheme();
    case SchemeKind::gmzi_mixed_graph:
      return build_gmzi_mixed_graph_scheme(params.module_count);
    case SchemeKind::stabilizer_readout:
      return build_stabilizer_scheme(surface_code_913());
    case SchemeKind::msd_distribution:
      return build_msd_scheme(params.qubits_per_module, params.module_count);
  }
  throw std::invalid_argument("build_scheme: unknown scheme kind");
}

// The mixed fiber/entangler graph a gmzi_mixed_graph scheme wires up:
// vertices are the modules, directed edges the inter-GMZI fibers, undirected
// edges the gadget placements.
inline MixedGraph mixed_graph_of(const SwitchScheme& scheme) {
  detail::require(scheme.kind == SchemeKind::gmzi_mixed_graph,
                  "mixed_graph_of: scheme is not a mixed-graph fabric");
  std::vector<std::pair<int, int>> undirected;
  std::vector<std::pair<int, int>> directed;
  for (const auto& e : scheme.entanglers) {
    undirected.emplace_back(scheme.gmzi(e.arm1.id).module,
                            scheme.gmzi(e.arm2.id).module);
  }
  for (const auto& w : scheme.hardwires) {
    if (w.to.kind == EndpointKind::gmzi_input) {
      directed.emplace_back(scheme.gmzi(w.gmzi).module,
                            scheme.gmzi(w.to.id).module);
    }
  }
  return MixedGraph(static_cast<int>(scheme.modules.size()), undirected,
                    directed);
}

struct IntRange {
  int min = 0;
  int max = 0;

  bool single() const { return min == max; }

  friend bool operator==(const IntRange& a, const IntRange& b) {
    return a.min == b.min && a.max == b.max;
  }
};

struct ResourceReport {
  std::string scheme_name;
  int gmzi_count = 0;
  std::map<std::string, int> gmzi_sizes;  // device label -> how many
  int entangler_count = 0;
  // Active switching layers crossed to create one entangled link, summed
  // over the photons that meet at that link (a directly transmitted photon
  // is the only photon of its link). Gadgets contribute no layers. Couplers
  // count 2 per layer, one onto and one off the chip.
  IntRange active_depth;
  IntRange couplers;
};

namespace detail {

inline const Hardwire& expect_hardwire(const SwitchScheme& s, int gmzi,
                                       int port) {
  const Hardwire* w = s.hardwire_at(gmzi, port);
  if (w == nullptr) {
    throw std::logic_error("resource walk: gmzi " + std::to_string(gmzi) +
                           " output " + std::to_string(port) +
                           " has no hardwire");
  }
  return *w;
}

inline void expect_input(const SwitchScheme& s, int gmzi, int port,
                         const Endpoint& from) {
  const InputWire* w = s.input_at(gmzi, port);
  if (w == nullptr || !(w->from == from)) {
    throw std::logic_error("resource walk: gmzi " + std::to_string(gmzi) +
                           " input " + std::to_string(port) +
                           " is not fed from " + to_string(from));
  }
}

// The far side of an output-to-output fiber touching (gmzi, port), looking
// in both key directions.
inline Endpoint loop_partner(const SwitchScheme& s, int gmzi, int port) {
  if (const Hardwire* w = s.hardwire_at(gmzi, port)) {
    if (w->to.kind == EndpointKind::gmzi_output) return w->to;
  }
  for (const auto& w : s.hardwires) {
    if (w.to == Endpoint{EndpointKind::gmzi_output, gmzi, port}) {
      return Endpoint{EndpointKind::gmzi_output, w.gmzi, w.port};
    }
  }
  throw std::logic_error("resource walk: no loop fiber at gmzi " +
                         std::to_string(gmzi) + " output " +
                         std::to_string(port));
}

inline std::vector<int> spanke_attempt_depths(const SwitchScheme& s) {
  const bool probabilistic = s.kind == SchemeKind::spanke_probabilistic;
  std::vector<int> depths;
  // Sites of one crossbar share their combiners; walk each crossbar's
  // canonical loop once per site pair inside it.
  std::map<int, std::vector<int>> crossbar_routers;  // crossbar -> router ids
  for (const auto& g : s.gmzis) {
    if (g.label.rfind("router ", 0) == 0) {
      const int span = g.spec.outputs;
      crossbar_routers[(g.id - 1) / span].push_back(g.id);
    }
  }
  for (const auto& [crossbar, routers] : crossbar_routers) {
    (void)crossbar;
    for (int a : routers) {
      for (int b : routers) {
        if (a >= b) continue;
        // Photon (or photon pair) from sites a and b across loop positions
        // 1 and 2 of their crossbar.
        const Hardwire& leg1 = expect_hardwire(s, a, 1);
        const Hardwire& leg2 = expect_hardwire(s, b, 2);
        if (leg1.to.kind != EndpointKind::gmzi_input ||
            leg2.to.kind != EndpointKind::gmzi_input) {
          throw std::logic_error("resource walk: spanke router feeds no combiner");
        }
        const int combiner1 = leg1.to.id;
        const int combiner2 = leg2.to.id;
        if (probabilistic) {
          const Endpoint arm1{EndpointKind::gmzi_output, combiner1, 1};
          const Endpoint arm2{EndpointKind::gmzi_output, combiner2, 1};
          const EntanglerRecord* e = s.entangler_with_arm(arm1);
          if (e == nullptr ||
              !(e->arm1 == arm2 || e->arm2 == arm2)) {
            throw std::logic_error("resource walk: spanke loop gadget missing");
          }
          depths.push_back(2 + 2);
        } else {
          const Endpoint far = loop_partner(s, combiner1, 1);
          if (!(far == Endpoint{EndpointKind::gmzi_output, combiner2, 1})) {
            throw std::logic_error("resource walk: spanke loop pairing broken");
          }
          depths.push_back(4);
        }
      }
    }
  }
  return depths;
}

inline std::vector<int> block_paired_attempt_depths(const SwitchScheme& s,
                                                    int block_size,
                                                    bool gadget_on_arrival) {
  std::vector<int> depths;
  for (const auto& from : s.modules) {
    for (const auto& to : s.modules) {
      if (from.id == to.id) continue;
      const int g_from = s.module_gmzi(from.id).id;
      const int g_to = s.module_gmzi(to.id).id;
      const int base_from = partner_block_base(s, from.id, to.id, block_size);
      const int base_to = partner_block_base(s, to.id, from.id, block_size);
      for (int k = 1; k <= block_size; ++k) {
        const Endpoint far = loop_partner(s, g_from, base_from + k);
        if (!(far == Endpoint{EndpointKind::gmzi_output, g_to, base_to + k})) {
          throw std::logic_error("resource walk: block pairing broken between " +
                                 from.name + " and " + to.name);
        }
      }
      if (gadget_on_arrival) {
        // The traveling photon exits the partner's input side into a gadget
        // arm; the partner's own photon reaches the other arm with no
        // switching layers.
        const EntanglerRecord* e =
            s.entangler_with_arm({EndpointKind::gmzi_input, g_to, 1});
        if (e == nullptr) {
          throw std::logic_error("resource walk: no gadget behind " + to.name);
        }
        depths.push_back(2 + 0);
      } else {
        depths.push_back(2);
      }
    }
  }
  return depths;
}

inline std::vector<int> mixed_attempt_depths(const SwitchScheme& s) {
  const MixedGraph graph = mixed_graph_of(s);
  std::vector<int> depths;
  for (int u = 1; u <= graph.n_vertices(); ++u) {
    for (int v = u + 1; v <= graph.n_vertices(); ++v) {
      depths.push_back(route_pair(graph, u, v, 2).total_traversals());
    }
  }
  return depths;
}

inline std::vector<int> stabilizer_attempt_depths(const SwitchScheme& s) {
  std::vector<int> depths;
  for (const auto& g : s.gmzis) {
    if (g.spec.inputs != 1) continue;  // data side
    expect_input(s, g.id, 1, {EndpointKind::module_port, g.module, 1});
    for (int slot = 1; slot <= g.spec.outputs; ++slot) {
      const Hardwire& to_check = expect_hardwire(s, g.id, slot);
      if (to_check.to.kind != EndpointKind::gmzi_input) {
        throw std::logic_error("resource walk: data slot not aimed at a check");
      }
      const Hardwire& to_module = expect_hardwire(s, to_check.to.id, 1);
      if (to_module.to.kind != EndpointKind::module_port) {
        throw std::logic_error("resource walk: check output not at a module");
      }
      depths.push_back(2);
    }
  }
  return depths;
}

inline std::vector<int> msd_attempt_depths(const SwitchScheme& s) {
  std::vector<int> depths;
  const GmziPlacement& fanout = s.gmzis.front();
  for (int port = 1; port <= fanout.spec.outputs; ++port) {
    const Hardwire& w = expect_hardwire(s, fanout.id, port);
    if (w.to.kind != EndpointKind::module_port) {
      throw std::logic_error("resource walk: fanout output not at a module");
    }
    depths.push_back(1);
  }
  return depths;
}

}  // namespace detail

// Counts devices and gadgets and walks every photon itinerary the scheme
// supports, reporting the range of active layers (and fiber-to-chip
// couplers, two per layer) needed to create one entangled link.
inline ResourceReport resource_report(const SwitchScheme& scheme) {
  const WiringAudit audit = audit_wiring(scheme);
  if (!audit.ok) {
    throw std::invalid_argument("resource_report: scheme fails its wiring audit: " +
                                audit.issues.front());
  }

  ResourceReport report;
  report.scheme_name = scheme.name;
  report.gmzi_count = static_cast<int>(scheme.gmzis.size());
  for (const auto& g : scheme.gmzis) {
    ++report.gmzi_sizes[g.spec.label()];
  }
  report.entangler_count = static_cast<int>(scheme.entanglers.size());

  std::vector<int> depths;
  switch (scheme.kind) {
    case SchemeKind::spanke_direct:
    case SchemeKind::spanke_probabilistic:
      depths = detail::spanke_attempt_depths(scheme);
      break;
    case SchemeKind::gmzi_direct: {
      const int stride = scheme.gmzis.front().spec.outputs /
                         (static_cast<int>(scheme.modules.size()) - 1);
      depths = detail::block_paired_attempt_depths(scheme, stride, false);
      break;
    }
    case SchemeKind::gmzi_equalized: {
      const int q = scheme.gmzis.front().spec.inputs / 2;
      depths = detail::block_paired_attempt_depths(scheme, q, true);
      break;
    }
    case SchemeKind::gmzi_merge:
      depths = detail::block_paired_attempt_depths(scheme, 2, true);
      break;
    case SchemeKind::gmzi_mixed_graph:
      depths = detail::mixed_attempt_depths(scheme);
      break;
    case SchemeKind::stabilizer_readout:
      depths = detail::stabilizer_attempt_depths(scheme);
      break;
    case SchemeKind::msd_distribution:
      depths = detail::msd_attempt_depths(scheme);
      break;
  }
  if (depths.empty()) {
    throw std::logic_error("resource_report: no photon itineraries found");
  }
  const auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
  report.active_depth = {*lo, *hi};
  report.couplers = {2 * *lo, 2 * *hi};
  return report;
}

}  // namespace gmzi
