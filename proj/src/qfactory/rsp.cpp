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

#include "bqc/qfactory/rsp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "bqc/qsim/simulate.hpp"

namespace bqc::qfactory {

using qsim::GateKind;

std::string RspReadout::describe() const {
  std::string s = squeezed == SqueezedPair::Controls ? "squeeze=controls" : "squeeze=targets";
  s += image == ImageSource::ComputationalPair ? ",y=computational" : ",y=squeezed";
  s += ",positions=x" + std::to_string(positions[0] + 1) + ",x" + std::to_string(positions[1] + 1);
  if (sign == 0) {
    s += ",sign=+1";
  } else if (sign <= 3) {
    s += ",sign=x" + std::to_string(sign);
  } else {
    s += ",sign=x'" + std::to_string(sign - 3);
  }
  return s;
}

RspLayout standard_layout(int qubit_base, int clbit_base) {
  const int q = qubit_base, c = clbit_base;
  return {{q, q + 1, q + 2}, {q + 3, q + 4}, {c, c + 1}, {c + 2, c + 3}};
}

RspLayout key_oblivious_layout(const TrapdoorKey& key, int qubit_base, int clbit_base, const RspReadout& readout) {
  RspLayout l = standard_layout(qubit_base, clbit_base);
  if (key.e() == 1) {
    std::swap(l.controls[0], l.controls[1]);
    const bool controls_squeezed = readout.squeezed == SqueezedPair::Controls;
    const bool controls_hold_image = controls_squeezed == (readout.image == ImageSource::SqueezedPair);
    auto& pair = controls_hold_image ? l.y_clbits : l.b_clbits;
    std::swap(pair[0], pair[1]);
  }
  return l;
}

RspInstance make_instance(const TrapdoorKey& key, std::array<Angle8, 2> alpha, RspLayout layout) {
  return {key, public_matrices(key), alpha, layout, kCalibratedReadout};
}

namespace {

struct Pairs {
  std::array<int, 2> squeezed_qubits;
  std::array<int, 2> squeezed_clbits;
  std::array<int, 2> plain_qubits;
  std::array<int, 2> plain_clbits;
};

Pairs pairs_of(const RspInstance& inst) {
  const auto& l = inst.layout;
  const std::array<int, 2> ctl{l.controls[0], l.controls[1]};
  const bool sq_controls = inst.readout.squeezed == SqueezedPair::Controls;
  const bool y_on_squeezed = inst.readout.image == ImageSource::SqueezedPair;
  return {sq_controls ? ctl : l.targets, y_on_squeezed ? l.y_clbits : l.b_clbits, sq_controls ? l.targets : ctl,
          y_on_squeezed ? l.b_clbits : l.y_clbits};
}

void check_layout(const qsim::Circuit& c, const RspLayout& l) {
  std::set<int> qs(l.controls.begin(), l.controls.end());
  qs.insert(l.targets.begin(), l.targets.end());
  std::set<int> cs(l.y_clbits.begin(), l.y_clbits.end());
  cs.insert(l.b_clbits.begin(), l.b_clbits.end());
  if (qs.size() != 5 || cs.size() != 4) throw std::invalid_argument("RSP layout indices collide");
  if (*qs.begin() < 0 || *qs.rbegin() >= c.num_qubits() || *cs.begin() < 0 || *cs.rbegin() >= c.num_clbits()) {
    throw std::invalid_argument("RSP layout index out of range");
  }
}

// Indices 0, 1 ordered by their physical qubit.
std::array<int, 2> by_qubit(const std::array<int, 2>& qubits) {
  return qubits[0] < qubits[1] ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
}

}  // namespace

void emit_rsp(qsim::Circuit& c, const RspInstance& inst) {
  const auto& l = inst.layout;
  check_layout(c, l);

  std::array<int, 3> ctl = l.controls;
  std::sort(ctl.begin(), ctl.end());
  for (int q : ctl) c.h(q);

  const std::array<int, 5> phys{l.controls[0], l.controls[1], l.controls[2], l.targets[0], l.targets[1]};
  std::vector<std::tuple<int, int, int>> gates;  // (target, low control, high control)
  const qsim::Circuit oracle = build_oracle(inst.pub);
  for (const auto& g : oracle.instructions()) {
    if (g.kind == GateKind::CX) {
      gates.emplace_back(phys[g.qubits[1]], phys[g.qubits[0]], phys[g.qubits[0]]);
    } else {
      const int a = phys[g.qubits[0]], b = phys[g.qubits[1]];
      gates.emplace_back(phys[g.qubits[2]], std::min(a, b), std::max(a, b));
    }
  }
  std::sort(gates.begin(), gates.end());
  for (auto [t, a, b] : gates) {
    if (a == b) {
      c.cx(a, t);
    } else {
      c.ccx(a, b, t);
    }
  }

  const Pairs p = pairs_of(inst);
  for (int i : by_qubit(p.squeezed_qubits)) {
    const int q = p.squeezed_qubits[i];
    c.rz(q, -inst.alpha[i]);
    c.h(q);
    c.measure(q, p.squeezed_clbits[i]);
  }
  for (int i : by_qubit(p.plain_qubits)) c.measure(p.plain_qubits[i], p.plain_clbits[i]);
}

qsim::Circuit build_rsp_circuit(const RspInstance& inst) {
  const auto& l = inst.layout;
  int nq = 0, nc = 0;
  for (int q : l.controls) nq = std::max(nq, q + 1);
  for (int q : l.targets) nq = std::max(nq, q + 1);
  for (int b : l.y_clbits) nc = std::max(nc, b + 1);
  for (int b : l.b_clbits) nc = std::max(nc, b + 1);
  qsim::Circuit c(nq, nc);
  emit_rsp(c, inst);
  return c;
}

std::string RspOutcome::substring() const { return to_string(y) + to_string(b); }

RspOutcome read_outcome(const RspInstance& inst, const std::string& bits) {
  RspOutcome o;
  for (int i = 0; i < 2; ++i) {
    o.y[i] = static_cast<std::uint8_t>(qsim::bit_at(bits, inst.layout.y_clbits[i]));
    o.b[i] = static_cast<std::uint8_t>(qsim::bit_at(bits, inst.layout.b_clbits[i]));
  }
  return o;
}

Angle8 compute_theta(const RspInstance& inst, const Claw& claw, const Bits2& b) {
  const auto& r = inst.readout;
  int sign_bit = 0;
  if (r.sign >= 1 && r.sign <= 3) sign_bit = claw.x[r.sign - 1];
  if (r.sign >= 4) sign_bit = claw.x_prime[r.sign - 4];
  long long sum = 0;
  for (int i = 0; i < 2; ++i) {
    const int p = r.positions[i];
    sum += (int(claw.x[p]) - int(claw.x_prime[p])) * (4 * b[i] + inst.alpha[i].k());
  }
  return Angle8::wrap(sign_bit ? -sum : sum);
}

Angle8 theta_for_outcome(const RspInstance& inst, const RspOutcome& outcome) {
  return compute_theta(inst, invert(inst.key, outcome.y), outcome.b);
}

std::vector<RspOutcome> all_outcomes() {
  std::vector<RspOutcome> out;
  for (int v = 0; v < 16; ++v) {
    RspOutcome o;
    o.y = {std::uint8_t((v >> 3) & 1), std::uint8_t((v >> 2) & 1)};
    o.b = {std::uint8_t((v >> 1) & 1), std::uint8_t(v & 1)};
    out.push_back(o);
  }
  return out;
}

std::vector<RspOutcome> outcomes_for_theta(const RspInstance& inst, Angle8 target) {
  std::vector<RspOutcome> out;
  for (const auto& o : all_outcomes()) {
    if (theta_for_outcome(inst, o) == target) out.push_back(o);
  }
  return out;
}

nlohmann::json rsp_public_json(const RspInstance& inst) {
  const auto& l = inst.layout;
  std::vector<int> qubits{l.controls.begin(), l.controls.end()};
  qubits.insert(qubits.end(), l.targets.begin(), l.targets.end());
  std::vector<int> clbits{l.y_clbits.begin(), l.y_clbits.end()};
  clbits.insert(clbits.end(), l.b_clbits.begin(), l.b_clbits.end());
  std::sort(qubits.begin(), qubits.end());
  std::sort(clbits.begin(), clbits.end());
  const Pairs p = pairs_of(inst);
  nlohmann::json alpha = nlohmann::json::array();
  for (int i : by_qubit(p.squeezed_qubits)) alpha.push_back(inst.alpha[i].k());
  auto j = public_to_json(inst.pub);
  j["alpha"] = alpha;
  j["layout"] = {{"qubits", qubits}, {"clbits", clbits}};
  return j;
}

}  // namespace bqc::qfactory
