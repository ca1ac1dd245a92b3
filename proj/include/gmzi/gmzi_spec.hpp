#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "gmzi/phase_config.hpp"

namespace gmzi {

inline int next_power_of_two(int v) {
  if (v < 1) throw std::invalid_argument("next_power_of_two: needs v >= 1");
  int p = 1;
  while (p < v) p *= 2;
  return p;
}

// Nominal port counts of one switching device. Rectangular and
// non-power-of-two devices are simulated on the square power-of-two envelope
// that contains them: unused inputs stay dark and unused outputs are padding.
struct GmziSpec {
  int inputs = 0;
  int outputs = 0;

  GmziSpec() = default;
  GmziSpec(int in, int out) : inputs(in), outputs(out) {
    if (in < 1 || out < 1) {
      throw std::invalid_argument("GmziSpec: port counts must be >= 1");
    }
  }

  int padded_inputs() const { return next_power_of_two(inputs); }
  int padded_outputs() const { return next_power_of_two(outputs); }

  // Square size the device is simulated at.
  int sim_size() const { return std::max(padded_inputs(), padded_outputs()); }

  // Number of pairing levels of the simulated square device.
  int levels() const { return log2_exact(static_cast<std::uint64_t>(sim_size())); }

  bool input_is_padding(int port) const { return port > inputs; }
  bool output_is_padding(int port) const { return port > outputs; }

  std::string label() const {
    return std::to_string(inputs) + "->" + std::to_string(outputs);
  }

  friend bool operator==(const GmziSpec& a, const GmziSpec& b) {
    return a.inputs == b.inputs && a.outputs == b.outputs;
  }
};

}  // namespace gmzi
