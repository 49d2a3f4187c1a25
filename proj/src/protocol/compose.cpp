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

#include "bqc/protocol/compose.hpp"

#include <algorithm>
#include <stdexcept>

#include "bqc/qfactory/certify.hpp"
#include "bqc/qsim/simulate.hpp"

namespace bqc::protocol {

using qsim::GateKind;

qfactory::RspOutcome read_rsp(const RspBits& bits, const std::string& shot) {
  std::array<std::uint8_t, 4> v{};
  for (int k = 0; k < 4; ++k) {
    int x = qsim::bit_at(shot, bits.record[k]);
    if (bits.prior[k] >= 0) x ^= qsim::bit_at(shot, bits.prior[k]);
    v[k] = static_cast<std::uint8_t>(x);
  }
  return {{v[0], v[1]}, {v[2], v[3]}};
}

namespace {

qfactory::RspLayout shifted(const qfactory::RspLayout& l, int qbase, int cbase) {
  auto in_block = [](auto values, int limit) {
    return std::all_of(values.begin(), values.end(), [&](int v) { return v >= 0 && v < limit; });
  };
  if (!in_block(l.controls, 5) || !in_block(l.targets, 5) || !in_block(l.y_clbits, 4) || !in_block(l.b_clbits, 4)) {
    throw std::invalid_argument("RSP layout must be block-local");
  }
  qfactory::RspLayout s = l;
  for (int& q : s.controls) q += qbase;
  for (int& q : s.targets) q += qbase;
  for (int& b : s.y_clbits) b += cbase;
  for (int& b : s.b_clbits) b += cbase;
  return s;
}

}  // namespace

ComposedJob compose(const ubqc::BlindedPattern& blinded, const std::vector<qfactory::RspInstance>& rsp,
                    bool swap_reuse, std::uint64_t shots) {
  const auto& p = blinded.pattern();
  const auto measured = p.measured_nodes();
  const auto outputs = p.output_nodes();
  const int n = static_cast<int>(measured.size());
  const int w = static_cast<int>(outputs.size());
  if (static_cast<int>(rsp.size()) != n) throw std::invalid_argument("need one RSP instance per measured node");

  const int workspace = swap_reuse ? (n > 0 ? 5 : 0) : 5 * n;
  const int data_base = workspace;
  const int output_base = swap_reuse ? data_base + n : workspace;

  ComposedJob job;
  job.shots = shots;
  job.circuit = qsim::Circuit(output_base + w, 4 * n + n + w);
  job.clbits.width = 4 * n + n + w;
  auto& c = job.circuit;

  std::vector<int> qubit_of(p.nodes().size(), -1);
  std::vector<int> last_clbit(c.num_qubits(), -1);

  for (int b = 0; b < n; ++b) {
    qfactory::RspInstance inst = rsp[b];
    if (swap_reuse && !(inst.readout == qfactory::kCalibratedReadout)) {
      throw std::invalid_argument("qubit recycling is only defined for the calibrated readout");
    }
    inst.layout = shifted(inst.layout, swap_reuse ? 0 : 5 * b, 4 * b);
    const Angle8 target = blinded.theta().at(measured[b]);
    const auto reach = qfactory::reachable_thetas(inst);
    if (std::find(reach.begin(), reach.end(), target) == reach.end()) {
      throw std::invalid_argument("RSP instance cannot prepare the theta of node " + std::to_string(measured[b]));
    }

    const std::size_t start = c.size();
    qfactory::emit_rsp(c, inst);
    std::vector<int> prior_of_clbit(c.num_clbits(), -1);
    for (std::size_t i = start; i < c.size(); ++i) {
      const auto& g = c.instructions()[i];
      if (g.kind == GateKind::RZ) job.alpha_ops.push_back(i);
      if (g.kind == GateKind::MEASURE) {
        prior_of_clbit[g.clbit] = last_clbit[g.qubits[0]];
        last_clbit[g.qubits[0]] = g.clbit;
      }
    }

    RspBits bits;
    bits.node = measured[b];
    const auto& l = inst.layout;
    bits.record = {l.y_clbits[0], l.y_clbits[1], l.b_clbits[0], l.b_clbits[1]};
    for (int k = 0; k < 4; ++k) bits.prior[k] = prior_of_clbit[bits.record[k]];
    job.clbits.rsp.push_back(bits);

    if (swap_reuse) {
      c.swap(l.state_qubit(), data_base + b);
      qubit_of[measured[b]] = data_base + b;
    } else {
      qubit_of[measured[b]] = l.state_qubit();
    }
  }

  for (int j = 0; j < w; ++j) {
    qubit_of[outputs[j]] = output_base + j;
    c.h(output_base + j);
  }
  for (const auto& [a, b] : p.edges()) c.cz(qubit_of[a], qubit_of[b]);
  for (int i = 0; i < n; ++i) {
    const int q = qubit_of[measured[i]];
    job.delta_ops.push_back(c.size());
    c.rz(q, blinded.delta().at(measured[i]));
    c.h(q);
    c.measure(q, 4 * n + i);
    job.clbits.pattern.push_back(4 * n + i);
  }
  for (int j = 0; j < w; ++j) {
    c.measure(output_base + j, 5 * n + j);
    job.clbits.outputs.push_back(5 * n + j);
  }
  return job;
}

}  // namespace bqc::protocol
