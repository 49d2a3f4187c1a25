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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bqc/qfactory/rsp.hpp"
#include "bqc/qsim/circuit.hpp"
#include "bqc/ubqc/blind.hpp"

namespace bqc::protocol {

/// Clbits of one RSP gadget. `record` holds y1 y2 b1 b2; `prior[k]` is the
/// clbit whose value must be XORed into record[k] (or -1), which happens
/// when the gadget runs on qubits recycled from an earlier gadget.
struct RspBits {
  int node = -1;
  std::array<int, 4> record{};
  std::array<int, 4> prior{-1, -1, -1, -1};
};

/// Partition of a composed job's clbits. `pattern[i]` belongs to the i-th
/// measured node, `outputs[j]` to the j-th output node.
struct ClbitMap {
  int width = 0;
  std::vector<RspBits> rsp;
  std::vector<int> pattern;
  std::vector<int> outputs;
};

/// The gadget outcome of one shot, with recycling corrections applied.
qfactory::RspOutcome read_rsp(const RspBits& bits, const std::string& shot);

struct ComposedJob {
  qsim::Circuit circuit;
  ClbitMap clbits;
  std::uint64_t shots = 0;
  /// Instruction indices of the RZ(delta) and RZ(-alpha) rotations, the only
  /// instructions allowed to differ between two runs of one source circuit.
  std::vector<std::size_t> delta_ops;
  std::vector<std::size_t> alpha_ops;
};

/// Builds the server circuit. rsp[i] prepares the input of the i-th
/// measured node and must use a block-local layout (qubits 0..4, clbits
/// 0..3); its reachable thetas must include the node's secret theta.
///
/// Without swap_reuse every gadget owns five qubits and its state qubit is
/// the node. With swap_reuse all gadgets share one five-qubit workspace: each
/// prepared state is swapped onto a fresh node qubit, and the four measured
/// ancillas are reused as they are, which the clbit map corrects for.
/// Output nodes start in |+> via H.
ComposedJob compose(const ubqc::BlindedPattern& blinded, const std::vector<qfactory::RspInstance>& rsp,
                    bool swap_reuse, std::uint64_t shots);

}  // namespace bqc::protocol
