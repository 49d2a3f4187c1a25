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

#include "bqc/mbqc/compile.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>

namespace bqc::mbqc {

using qsim::Circuit;
using qsim::GateKind;
using qsim::Instruction;

namespace {

// Per-wire word over H, RZ and CZ bridge markers, kept simplified as it
// grows: H.H cancels, RZ merges mod 8 through bridges (CZ is diagonal), and
// RZ(0) disappears.
struct Token {
  enum Kind { H, RZ, Bridge } kind;
  Angle8 angle{};
  int bridge = -1;
};

class WireWord {
 public:
  void h() {
    if (!tokens_.empty() && tokens_.back().kind == Token::H) {
      tokens_.pop_back();
    } else {
      tokens_.push_back({Token::H});
    }
  }

  void rz(Angle8 a) {
    if (a.is_zero()) return;
    for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it) {
      if (it->kind == Token::Bridge) continue;
      if (it->kind == Token::RZ) {
        it->angle += a;
        if (it->angle.is_zero()) tokens_.erase(std::next(it).base());
        return;
      }
      break;
    }
    tokens_.push_back({Token::RZ, a});
  }

  void bridge(int id) { tokens_.push_back({Token::Bridge, {}, id}); }

  // Emits H.Rz(phi) factors: H closes a factor with the pending angle, and a
  // trailing rotation becomes Rz(p) = H.Rz(0).H.Rz(p).
  std::vector<Angle8> factors(std::vector<std::pair<int, int>>& bridge_pos) const {
    std::vector<Angle8> out;
    Angle8 pending;
    for (const auto& t : tokens_) {
      switch (t.kind) {
        case Token::H:
          out.push_back(pending);
          pending = Angle8::zero();
          break;
        case Token::RZ: pending += t.angle; break;
        case Token::Bridge: bridge_pos.emplace_back(t.bridge, static_cast<int>(out.size())); break;
      }
    }
    if (!pending.is_zero()) {
      out.push_back(pending);
      out.push_back(Angle8::zero());
    }
    return out;
  }

 private:
  std::vector<Token> tokens_;
};

void feed(std::vector<WireWord>& wires, std::vector<std::pair<int, int>>& bridges, const Instruction& inst) {
  const auto& q = inst.qubits;
  switch (inst.kind) {
    case GateKind::H: wires[q[0]].h(); break;
    case GateKind::Z: wires[q[0]].rz(Angle8::pi()); break;
    case GateKind::RZ: wires[q[0]].rz(inst.angle); break;
    case GateKind::X:
      wires[q[0]].h();
      wires[q[0]].rz(Angle8::pi());
      wires[q[0]].h();
      break;
    case GateKind::CZ:
    case GateKind::CX: {
      if (inst.kind == GateKind::CX) wires[q[1]].h();
      const int id = static_cast<int>(bridges.size());
      bridges.emplace_back(q[0], q[1]);
      wires[q[0]].bridge(id);
      wires[q[1]].bridge(id);
      if (inst.kind == GateKind::CX) wires[q[1]].h();
      break;
    }
    default:
      throw std::invalid_argument("compiler does not support gate '" + std::string(qsim::gate_name(inst.kind)) + "'");
  }
}

Pattern build(const std::vector<WireWord>& wires, const std::vector<std::pair<int, int>>& bridges) {
  std::vector<Node> nodes;
  std::vector<std::vector<int>> bridge_node(bridges.size(), std::vector<int>(2, -1));
  std::vector<Edge> edges;

  for (std::size_t w = 0; w < wires.size(); ++w) {
    std::vector<std::pair<int, int>> pos;
    const auto phis = wires[w].factors(pos);
    const int base = static_cast<int>(nodes.size());
    for (std::size_t i = 0; i <= phis.size(); ++i) {
      Node n;
      n.id = base + static_cast<int>(i);
      n.wire = static_cast<int>(w);
      if (i == phis.size()) {
        n.role = NodeRole::Output;
      } else {
        n.role = i == 0 ? NodeRole::Input : NodeRole::Body;
        n.angle = phis[i];
      }
      nodes.push_back(n);
      if (i > 0) edges.emplace_back(n.id - 1, n.id);
    }
    for (auto [id, p] : pos) {
      const int side = bridges[id].first == static_cast<int>(w) ? 0 : 1;
      bridge_node[id][side] = base + p;
    }
  }

  // CZ squares to identity, so a repeated bridge between the same two live
  // nodes cancels.
  std::set<Edge> cross;
  for (const auto& b : bridge_node) {
    Edge e{std::min(b[0], b[1]), std::max(b[0], b[1])};
    if (!cross.erase(e)) cross.insert(e);
  }
  edges.insert(edges.end(), cross.begin(), cross.end());
  return Pattern(std::move(nodes), std::move(edges));
}

}  // namespace

Pattern compile_1q(const std::vector<Instruction>& gates) {
  if (gates.empty()) throw std::invalid_argument("compile_1q: empty gate list");
  std::vector<WireWord> wires(1);
  std::vector<std::pair<int, int>> bridges;
  for (auto g : gates) {
    if (g.arity() != 1 || g.kind == GateKind::MEASURE) {
      throw std::invalid_argument("compile_1q: '" + std::string(qsim::gate_name(g.kind)) + "' is not a one-qubit gate");
    }
    g.qubits[0] = 0;
    feed(wires, bridges, g);
  }
  return build(wires, bridges);
}

Pattern compile_circuit(const Circuit& circuit) {
  if (circuit.num_qubits() < 1) throw std::invalid_argument("compile_circuit: circuit has no qubits");
  std::vector<WireWord> wires(static_cast<std::size_t>(circuit.num_qubits()));
  std::vector<std::pair<int, int>> bridges;
  for (const auto& inst : circuit.instructions()) feed(wires, bridges, inst);
  return build(wires, bridges);
}

Circuit from_zero_inputs(const Circuit& circuit) {
  Circuit out(circuit.num_qubits(), circuit.num_clbits());
  for (int q = 0; q < circuit.num_qubits(); ++q) out.h(q);
  for (const auto& inst : circuit.instructions()) out.push(inst);
  return out;
}

}  // namespace bqc::mbqc
