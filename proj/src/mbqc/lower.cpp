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

#include "bqc/mbqc/lower.hpp"

#include <stdexcept>
#include <string>

namespace bqc::mbqc {

InputMap plus_inputs(const Pattern& p) {
  InputMap m;
  for (int w = 0; w < p.num_wires(); ++w) m[w] = std::nullopt;
  return m;
}

qsim::Circuit lower_to_circuit(const Pattern& p, const InputMap& inputs, const LowerOptions& options) {
  const auto measured = p.measured_nodes();
  const auto outputs = p.output_nodes();
  const int n = static_cast<int>(p.nodes().size());
  const int clbits = static_cast<int>(measured.size()) + (options.measure_outputs ? static_cast<int>(outputs.size()) : 0);
  qsim::Circuit c(n, clbits);

  for (int q = 0; q < n; ++q) c.h(q);
  for (int w = 0; w < p.num_wires(); ++w) {
    auto it = inputs.find(w);
    if (it == inputs.end()) throw std::invalid_argument("lower_to_circuit: no input for wire " + std::to_string(w));
    if (it->second) c.rz(p.input_of_wire(w), *it->second);
  }
  for (const auto& [node, phase] : options.node_phase) c.rz(node, phase);
  for (const auto& [a, b] : p.edges()) c.cz(a, b);

  int clbit = 0;
  for (int id : measured) {
    c.rz(id, *p.node(id).angle);
    c.h(id);
    c.measure(id, clbit++);
  }
  if (options.measure_outputs) {
    for (int id : outputs) c.measure(id, clbit++);
  }
  return c;
}

}  // namespace bqc::mbqc
