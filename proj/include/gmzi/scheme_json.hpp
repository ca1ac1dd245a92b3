#pragma once

#include <string>

#include <json.hpp>

#include "gmzi/scheme.hpp"

namespace gmzi {

// JSON document shape for a SwitchScheme. Field order is fixed so serialized
// schemes are byte-stable; parse(serialize(parse(x))) == parse(x).

inline nlohmann::ordered_json endpoint_to_json(const Endpoint& e) {
  return {{"kind", to_string(e.kind)}, {"id", e.id}, {"port", e.port}};
}

inline Endpoint endpoint_from_json(const nlohmann::json& j) {
  Endpoint e;
  e.kind = endpoint_kind_from_string(j.at("kind").get<std::string>());
  e.id = j.at("id").get<int>();
  e.port = j.at("port").get<int>();
  return e;
}

inline nlohmann::ordered_json scheme_to_json(const SwitchScheme& scheme) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(scheme.kind);
  j["name"] = scheme.name;
  j["modules"] = nlohmann::ordered_json::array();
  for (const auto& m : scheme.modules) {
    j["modules"].push_back({{"id", m.id}, {"name", m.name}, {"qubits", m.qubits}});
  }
  j["gmzis"] = nlohmann::ordered_json::array();
  for (const auto& g : scheme.gmzis) {
    j["gmzis"].push_back({{"id", g.id},
                          {"label", g.label},
                          {"inputs", g.spec.inputs},
                          {"outputs", g.spec.outputs},
                          {"module", g.module}});
  }
  j["entanglers"] = nlohmann::ordered_json::array();
  for (const auto& e : scheme.entanglers) {
    j["entanglers"].push_back({{"id", e.id},
                               {"label", e.label},
                               {"arm1", endpoint_to_json(e.arm1)},
                               {"arm2", endpoint_to_json(e.arm2)}});
  }
  j["input_wires"] = nlohmann::ordered_json::array();
  for (const auto& w : scheme.input_wires) {
    j["input_wires"].push_back({{"gmzi", w.gmzi},
                                {"port", w.port},
                                {"from", endpoint_to_json(w.from)}});
  }
  j["hardwires"] = nlohmann::ordered_json::array();
  for (const auto& w : scheme.hardwires) {
    j["hardwires"].push_back(
        {{"gmzi", w.gmzi}, {"port", w.port}, {"to", endpoint_to_json(w.to)}});
  }
  return j;
}

inline SwitchScheme scheme_from_json(const nlohmann::json& j) {
  SwitchScheme scheme;
  scheme.kind = scheme_kind_from_string(j.at("kind").get<std::string>());
  scheme.name = j.at("name").get<std::string>();
  for (const auto& m : j.at("modules")) {
    scheme.modules.push_back({m.at("id").get<int>(),
                              m.at("name").get<std::string>(),
                              m.at("qubits").get<int>()});
  }
  for (const auto& g : j.at("gmzis")) {
    scheme.gmzis.push_back(
        {g.at("id").get<int>(), g.at("label").get<std::string>(),
         GmziSpec(g.at("inputs").get<int>(), g.at("outputs").get<int>()),
         g.at("module").get<int>()});
  }
  for (const auto& e : j.at("entanglers")) {
    scheme.entanglers.push_back({e.at("id").get<int>(),
                                 e.at("label").get<std::string>(),
                                 endpoint_from_json(e.at("arm1")),
                                 endpoint_from_json(e.at("arm2"))});
  }
  for (const auto& w : j.at("input_wires")) {
    scheme.input_wires.push_back({w.at("gmzi").get<int>(),
                                  w.at("port").get<int>(),
                                  endpoint_from_json(w.at("from"))});
  }
  for (const auto& w : j.at("hardwires")) {
    scheme.hardwires.push_back({w.at("gmzi").get<int>(), w.at("port").get<int>(),
                                endpoint_from_json(w.at("to"))});
  }
  return scheme;
}

inline std::string scheme_to_json_text(const SwitchScheme& scheme) {
  return scheme_to_json(scheme).dump(2) + "\n";
}

inline SwitchScheme scheme_from_json_text(const std::string& text) {
  return scheme_from_json(nlohmann::json::parse(text));
}

}  // namespace gmzi
