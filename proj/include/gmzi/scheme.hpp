#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmzi/gmzi_spec.hpp"

namespace gmzi {

// The switching fabrics modeled here. The first two are the central
// crossbar baseline (every photon crosses a shared switch-and-select
// network); the gmzi_* kinds place one routing device per module; the last
// two are single-purpose fabrics for check readout and magic-state fanout.
enum class SchemeKind {
  spanke_direct,
  spanke_probabilistic,
  gmzi_direct,
  gmzi_equalized,
  gmzi_merge,
  gmzi_mixed_graph,
  stabilizer_readout,
  msd_distribution,
};

inline std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::spanke_direct: return "spanke_direct";
    case SchemeKind::spanke_probabilistic: return "spanke_probabilistic";
    case SchemeKind::gmzi_direct: return "gmzi_direct";
    case SchemeKind::gmzi_equalized: return "gmzi_equalized";
    case SchemeKind::gmzi_merge: return "gmzi_merge";
    case SchemeKind::gmzi_mixed_graph: return "gmzi_mixed_graph";
    case SchemeKind::stabilizer_readout: return "stabilizer_readout";
    case SchemeKind::msd_distribution: return "msd_distribution";
  }
  throw std::invalid_argument("to_string: unknown scheme kind");
}

inline SchemeKind scheme_kind_from_string(const std::string& text) {
  for (SchemeKind kind :
       {SchemeKind::spanke_direct, SchemeKind::spanke_probabilistic,
        SchemeKind::gmzi_direct, SchemeKind::gmzi_equalized,
        SchemeKind::gmzi_merge, SchemeKind::gmzi_mixed_graph,
        SchemeKind::stabilizer_readout, SchemeKind::msd_distribution}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("scheme_kind_from_string: unknown kind '" + text + "'");
}

struct ModuleRecord {
  int id = 0;
  std::string name;
  int qubits = 0;
};

struct GmziPlacement {
  int id = 0;
  std::string label;
  GmziSpec spec;
  int module = 0;  // owning module id, or 0 for a shared fabric device
};

// A named attachment point in the fabric. Ports are 1-based everywhere.
//  module_port    - physical qubit `port` of module `id`
//  gmzi_input     - input-side port of a GMZI (where photons enter going
//                   forward, or exit when a fiber drives the device backward)
//  gmzi_output    - output-side port of a GMZI
//  entangler_arm  - arm 1 or 2 of a two-photon gadget
enum class EndpointKind { module_port, gmzi_input, gmzi_output, entangler_arm };

inline std::string to_string(EndpointKind kind) {
  switch (kind) {
    case EndpointKind::module_port: return "module_port";
    case EndpointKind::gmzi_input: return "gmzi_input";
    case EndpointKind::gmzi_output: return "gmzi_output";
    case EndpointKind::entangler_arm: return "entangler_arm";
  }
  throw std::invalid_argument("to_string: unknown endpoint kind");
}

inline EndpointKind endpoint_kind_from_string(const std::string& text) {
  for (EndpointKind kind :
       {EndpointKind::module_port, EndpointKind::gmzi_input,
        EndpointKind::gmzi_output, EndpointKind::entangler_arm}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("endpoint_kind_from_string: unknown kind '" + text + "'");
}

struct Endpoint {
  EndpointKind kind = EndpointKind::module_port;
  int id = 0;
  int port = 0;

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.kind == b.kind && a.id == b.id && a.port == b.port;
  }
  friend bool operator<(const Endpoint& a, const Endpoint& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.id != b.id) return a.id < b.id;
    return a.port < b.port;
  }
};

inline std::string to_string(const Endpoint& e) {
  return to_string(e.kind) + "(" + std::to_string(e.id) + "," +
         std::to_string(e.port) + ")";
}

// A fiber feeding a GMZI input port from a module qubit. Gadget-side input
// attachments are recorded on the entangler instead.
struct InputWire {
  int gmzi = 0;
  int port = 0;
  Endpoint from;
};

// A fiber leaving a GMZI output port. `to` is a peer GMZI port (gmzi_input
// when the peer is driven forward, gmzi_output when the two devices face
// each other and the photon continues backward through the peer) or a
// module port. Output-to-output fibers appear once, keyed by the smaller
// (gmzi, port) side. Fibers that end on an entangler arm are recorded on the
// entangler, not here.
struct Hardwire {
  int gmzi = 0;
  int port = 0;
  Endpoint to;
};

// A two-photon gadget (Bell-measurement or pair source). Each arm names the
// point it is attached to: a module qubit, a GMZI input-side port (photons
// reach it by running backward through that device), or a GMZI output port.
struct EntanglerRecord {
  int id = 0;
  std::string label;
  Endpoint arm1;
  Endpoint arm2;
};

struct SwitchScheme {
  SchemeKind kind = SchemeKind::gmzi_direct;
  std::string name;
  std::vector<ModuleRecord> modules;
  std::vector<GmziPlacement> gmzis;
  std::vector<EntanglerRecord> entanglers;
  std::vector<InputWire> input_wires;
  std::vector<Hardwire> hardwires;

  const ModuleRecord& module(int id) const {
    for (const auto& m : modules) {
      if (m.id == id) return m;
    }
    throw std::invalid_argument("SwitchScheme: no module with id " + std::to_string(id));
  }

  const ModuleRecord& module_named(const std::string& name_) const {
    for (const auto& m : modules) {
      if (m.name == name_) return m;
    }
    throw std::invalid_argument("SwitchScheme: no module named '" + name_ + "'");
  }

  const GmziPlacement& gmzi(int id) const {
    for (const auto& g : gmzis) {
      if (g.id == id) return g;
    }
    throw std::invalid_argument("SwitchScheme: no gmzi with id " + std::to_string(id));
  }

  // The single GMZI owned by a module; throws when there is not exactly one.
  const GmziPlacement& module_gmzi(int module_id) const {
    const GmziPlacement* found = nullptr;
    for (const auto& g : gmzis) {
      if (g.module != module_id) continue;
      if (found != nullptr) {
        throw std::invalid_argument("SwitchScheme: module " +
                                    std::to_string(module_id) +
                                    " owns more than one gmzi");
      }
      found = &g;
    }
    if (found == nullptr) {
      throw std::invalid_argument("SwitchScheme: module " +
                                  std::to_string(module_id) + " owns no gmzi");
    }
    return *found;
  }

  const Hardwire* hardwire_at(int gmzi_id, int port) const {
    for (const auto& w : hardwires) {
      if (w.gmzi == gmzi_id && w.port == port) return &w;
    }
    return nullptr;
  }

  const InputWire* input_at(int gmzi_id, int port) const {
    for (const auto& w : input_wires) {
      if (w.gmzi == gmzi_id && w.port == port) return &w;
    }
    return nullptr;
  }

  const EntanglerRecord* entangler_with_arm(const Endpoint& attachment) const {
    for (const auto& e : entanglers) {
      if (e.arm1 == attachment || e.arm2 == attachment) return &e;
    }
    return nullptr;
  }
};

struct WiringAudit {
  bool ok = true;
  std::vector<std::string> issues;
};

// Structural soundness of a scheme:
//  - ids are unique and every reference resolves,
//  - ports stay within each device's nominal range,
//  - no GMZI port is claimed by two fibers (module qubits may fan out to
//    several attachment fibers; only one is lit per time slot),
//  - every nominal GMZI output port is consumed exactly once (by a
//    hardwire, as the far side of an output-to-output fiber, or by an
//    entangler arm),
//  - every module qubit is attached somewhere.
inline WiringAudit audit_wiring(const SwitchScheme& scheme) {
  WiringAudit audit;
  auto flag = [&audit](std::string msg) {
    audit.ok = false;
    audit.issues.push_back(std::move(msg));
  };

  std::set<int> module_ids;
  for (const auto& m : scheme.modules) {
    if (!module_ids.insert(m.id).second) {
      flag("duplicate module id " + std::to_string(m.id));
    }
    if (m.qubits < 0) flag("module " + m.name + " has negative qubit count");
  }
  std::set<int> gmzi_ids;
  for (const auto& g : scheme.gmzis) {
    if (!gmzi_ids.insert(g.id).second) {
      flag("duplicate gmzi id " + std::to_string(g.id));
    }
    if (g.module != 0 && !module_ids.count(g.module)) {
      flag("gmzi " + std::to_string(g.id) + " owned by unknown module " +
           std::to_string(g.module));
    }
  }
  std::set<int> entangler_ids;
  for (const auto& e : scheme.entanglers) {
    if (!entangler_ids.insert(e.id).second) {
      flag("duplicate entangler id " + std::to_string(e.id));
    }
  }

  auto endpoint_valid = [&](const Endpoint& e) -> bool {
    switch (e.kind) {
      case EndpointKind::module_port: {
        if (!module_ids.count(e.id)) return false;
        return e.port >= 1 && e.port <= scheme.module(e.id).qubits;
      }
      case EndpointKind::gmzi_input: {
        if (!gmzi_ids.count(e.id)) return false;
        return e.port >= 1 && e.port <= scheme.gmzi(e.id).spec.inputs;
      }
      case EndpointKind::gmzi_output: {
        if (!gmzi_ids.count(e.id)) return false;
        return e.port >= 1 && e.port <= scheme.gmzi(e.id).spec.outputs;
      }
      case EndpointKind::entangler_arm:
        return entangler_ids.count(e.id) && (e.port == 1 || e.port == 2);
    }
    return false;
  };

  // Claims on GMZI ports; module ports are allowed to fan out.
  std::map<Endpoint, int> port_claims;
  auto claim = [&](const Endpoint& e, const std::string& what) {
    if (!endpoint_valid(e)) {
      flag(what + " references invalid endpoint " + to_string(e));
      return;
    }
    if (e.kind == EndpointKind::gmzi_input || e.kind == EndpointKind::gmzi_output) {
      if (++port_claims[e] > 1) {
        flag(what + " reuses already-claimed port " + to_string(e));
      }
    }
  };

  std::set<Endpoint> consumed_outputs;
  auto consume_output = [&](const Endpoint& e) {
    if (e.kind == EndpointKind::gmzi_output) consumed_outputs.insert(e);
  };

  for (const auto& w : scheme.input_wires) {
    const Endpoint target{EndpointKind::gmzi_input, w.gmzi, w.port};
    claim(target, "input wire");
    if (w.from.kind != EndpointKind::module_port) {
      flag("input wire into " + to_string(target) +
           " must come from a module port, got " + to_string(w.from));
    } else if (!endpoint_valid(w.from)) {
      flag("input wire from invalid endpoint " + to_string(w.from));
    }
  }
  for (const auto& w : scheme.hardwires) {
    const Endpoint source{EndpointKind::gmzi_output, w.gmzi, w.port};
    claim(source, "hardwire");
    consume_output(source);
    if (w.to.kind == EndpointKind::entangler_arm ||
        w.to.kind == EndpointKind::module_port) {
      if (w.to.kind == EndpointKind::entangler_arm) {
        flag("hardwire " + to_string(source) +
             " targets an entangler arm; arm attachments belong on the "
             "entangler record");
      }
      if (!endpoint_valid(w.to)) {
        flag("hardwire " + to_string(source) + " targets invalid endpoint " +
             to_string(w.to));
      }
    } else {
      claim(w.to, "hardwire target");
      consume_output(w.to);
      if (w.to.kind == EndpointKind::gmzi_output) {
        const Endpoint far = w.to;
        if (std::make_pair(far.id, far.port) < std::make_pair(w.gmzi, w.port)) {
          flag("output-to-output hardwire " + to_string(source) + " -> " +
               to_string(far) + " must be keyed by the smaller side");
        }
      }
    }
  }
  for (const auto& e : scheme.entanglers) {
    for (const Endpoint* arm : {&e.arm1, &e.arm2}) {
      claim(*arm, "entangler " + std::to_string(e.id) + " arm");
      consume_output(*arm);
      if (arm->kind == EndpointKind::entangler_arm) {
        flag("entangler " + std::to_string(e.id) + " arm attaches to another arm");
      }
    }
  }

  for (const auto& g : scheme.gmzis) {
    for (int port = 1; port <= g.spec.outputs; ++port) {
      if (!consumed_outputs.count(Endpoint{EndpointKind::gmzi_output, g.id, port})) {
        flag("gmzi " + std::to_string(g.id) + " (" + g.label + ") output " +
             std::to_string(port) + " is not consumed by any fiber");
      }
    }
  }

  for (const auto& m : scheme.modules) {
    for (int qubit = 1; qubit <= m.qubits; ++qubit) {
      const Endpoint port{EndpointKind::module_port, m.id, qubit};
      bool attached = false;
      for (const auto& w : scheme.input_wires) {
        if (w.from == port) attached = true;
      }
      for (const auto& w : scheme.hardwires) {
        if (w.to == port) attached = true;
      }
      for (const auto& e : scheme.entanglers) {
        if (e.arm1 == port || e.arm2 == port) attached = true;
      }
      if (!attached) {
        flag("module " + m.name + " qubit " + std::to_string(qubit) +
             " is attached to nothing");
      }
    }
  }

  return audit;
}

}  // namespace gmzi
