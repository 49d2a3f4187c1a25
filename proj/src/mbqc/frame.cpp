// Copyright 2026 The bqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bqc/mbqc/frame.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>

#include "bqc/mbqc/lower.hpp"
#include "bqc/qsim/simulate.hpp"

namespace bqc::mbqc {

using qsim::Branch;
using qsim::Statevector;

namespace {

constexpr double kTolerance = 1e-9;

// Pauli masks: bit 2j is X on output j, bit 2j+1 is Z on output j.
Statevector apply_pauli(Statevector s, std::uint64_t v) {
  for (int j = 0; j < s.num_qubits(); ++j) {
    if ((v >> (2 * j + 1)) & 1) qsim::apply_phase(s, j, {-1.0, 0.0});
    if ((v >> (2 * j)) & 1) qsim::apply_controlled_x(s, 0, j);
  }
  return s;
}

// Branch tables for one input assignment, indexed by the measured-outcome
// integer (measured node i is bit i).
using Table = std::vector<Branch>;

bool matches(const std::vector<Table>& tables, std::size_t branch, std::uint64_t v) {
  for (const auto& t : tables) {
    if (t[branch].zero_probability) continue;
    if (qsim::fidelity(apply_pauli(t[branch].residual, v), t[0].residual) < 1 - kTolerance) return false;
  }
  return true;
}

std::optional<std::uint64_t> first_match(const std::vector<Table>& tables, std::size_t branch, int outputs) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << (2 * outputs)); ++v) {
    if (matches(tables, branch, v)) return v;
  }
  return std::nullopt;
}

// Reduction modulo a GF(2) subspace, given by an echelon basis with
// distinct leading bits. The result is a linear function of v.
std::uint64_t reduce(std::uint64_t v, const std::vector<std::uint64_t>& basis) {
  for (auto b : basis) {
    const auto lead = std::uint64_t{1} << (63 - std::countl_zero(b));
    if (v & lead) v ^= b;
  }
  return v;
}

std::vector<std::uint64_t> echelon(std::vector<std::uint64_t> vs) {
  std::vector<std::uint64_t> basis;
  for (auto v : vs) {
    v = reduce(v, basis);
    if (v == 0) continue;
    const auto lead = std::uint64_t{1} << (63 - std::countl_zero(v));
    for (auto& b : basis) {
      if (b & lead) b ^= v;
    }
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return basis;
}

std::string branch_label(std::size_t branch, int m) { return qsim::format_bits(branch, m); }

// Per-bit Paulis that extend linearly to every branch, if they exist.
// On failure `bad` names the first branch that broke.
std::optional<std::vector<std::uint64_t>> linear_frame(const std::vector<Table>& tables, int m, int outputs,
                                                       const std::vector<std::uint64_t>& stabilizer,
                                                       std::size_t& bad) {
  std::vector<std::uint64_t> unit(m, 0);
  for (int i = 0; i < m; ++i) {
    auto v = first_match(tables, std::size_t{1} << i, outputs);
    bad = std::size_t{1} << i;
    if (!v) return std::nullopt;
    unit[i] = reduce(*v, stabilizer);
  }
  for (std::size_t b = 0; b < (std::size_t{1} << m); ++b) {
    std::uint64_t v = 0;
    for (int i = 0; i < m; ++i) {
      if ((b >> i) & 1) v ^= unit[i];
    }
    bad = b;
    if (!matches(tables, b, v)) return std::nullopt;
  }
  return unit;
}

Table enumerate(const Pattern& p, const InputMap& inputs) {
  LowerOptions options;
  options.measure_outputs = false;
  return qsim::enumerate_branches(lower_to_circuit(p, inputs, options));
}

}  // namespace

std::uint64_t PauliFrame::x_mask(std::span<const std::uint8_t> bits) const {
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < x_deps.size(); ++j) {
    int parity = 0;
    for (int node : x_deps[j]) {
      for (std::size_t i = 0; i < measured_nodes.size(); ++i) {
        if (measured_nodes[i] == node) parity ^= bits[i] & 1;
      }
    }
    if (parity) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

std::uint64_t PauliFrame::z_mask(std::span<const std::uint8_t> bits) const {
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < z_deps.size(); ++j) {
    int parity = 0;
    for (int node : z_deps[j]) {
      for (std::size_t i = 0; i < measured_nodes.size(); ++i) {
        if (measured_nodes[i] == node) parity ^= bits[i] & 1;
      }
    }
    if (parity) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

PauliFrame calibrate_frame(const Pattern& p) {
  PauliFrame frame;
  frame.measured_nodes = p.measured_nodes();
  frame.output_nodes = p.output_nodes();
  const int m = static_cast<int>(frame.measured_nodes.size());
  const int outputs = static_cast<int>(frame.output_nodes.size());
  frame.x_deps.assign(outputs, {});
  frame.z_deps.assign(outputs, {});
  if (m == 0) {
    frame.input_independent = true;
    return frame;
  }
  if (m > qsim::kMaxEnumeratedMeasurements) throw std::length_error("calibrate_frame: pattern too large");

  // Inputs |+> and |+_{pi/4}> on each wire: a Pauli that fixes every such
  // product state up to phase fixes the whole output map.
  std::vector<Table> fiducials;
  const int wires = p.num_wires();
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << wires); ++f) {
    InputMap in;
    for (int w = 0; w < wires; ++w) in[w] = ((f >> w) & 1) ? std::optional(Angle8::from_k(1)) : std::nullopt;
    fiducials.push_back(enumerate(p, in));
  }

  std::size_t bad = 0;
  std::optional<std::vector<std::uint64_t>> unit = linear_frame(fiducials, m, outputs, {}, bad);
  frame.input_independent = unit.has_value();
  if (!unit) {
    // Only the |+> input: the match is defined modulo the reference output's
    // Pauli stabilizer, so reduce to canonical coset representatives.
    const std::vector<Table> plus{fiducials.front()};
    std::vector<std::uint64_t> stab;
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << (2 * outputs)); ++v) {
      if (matches(plus, 0, v)) stab.push_back(v);
    }
    unit = linear_frame(plus, m, outputs, echelon(stab), bad);
    if (!unit) {
      for (std::size_t b = 1; b < (std::size_t{1} << m); ++b) {
        if (!plus[0][b].zero_probability && !first_match(plus, b, outputs)) {
          throw FrameError("no exact Pauli frame", branch_label(b, m));
        }
      }
      throw FrameError("Pauli frame is not XOR-linear in the outcomes", branch_label(bad, m));
    }
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < outputs; ++j) {
      if (((*unit)[i] >> (2 * j)) & 1) frame.x_deps[j].push_back(frame.measured_nodes[i]);
      if (((*unit)[i] >> (2 * j + 1)) & 1) frame.z_deps[j].push_back(frame.measured_nodes[i]);
    }
  }
  return frame;
}

}  // namespace bqc::mbqc
