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

#pragma once

#include <map>
#include <optional>

#include "bqc/mbqc/pattern.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::mbqc {

/// Per-wire input: nullopt is |+>, an angle t is |+_t>.
using InputMap = std::map<int, std::optional<Angle8>>;

/// Every wire mapped to |+>.
InputMap plus_inputs(const Pattern& p);

struct LowerOptions {
  bool measure_outputs = true;
  /// Extra RZ applied to a node right after its |+> preparation.
  std::map<int, Angle8> node_phase;
};

/// Circuit with one qubit per node (qubit = node id): H on every node, input
/// and node phases, CZ on every edge, then RZ(phi), H, MEASURE on each
/// measured node, and finally MEASURE on each output node. Clbits list the
/// measured nodes first, then the outputs, each in node-id order. Throws
/// std::invalid_argument when `inputs` lacks a wire.
qsim::Circuit lower_to_circuit(const Pattern& p, const InputMap& inputs, const LowerOptions& options = {});

}  // namespace bqc::mbqc
