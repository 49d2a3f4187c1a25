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

#include "bqc/protocol/demos.hpp"

#include <algorithm>

#include "bqc/mbqc/compile.hpp"

namespace bqc::protocol {

const std::vector<Demo>& demos() {
  static const std::vector<Demo> all = [] {
    qsim::Circuit bell(2, 0);
    bell.h(0).cx(0, 1);
    qsim::Circuit ghz(3, 0);
    ghz.h(0).cx(0, 1).cx(1, 2);
    qsim::Circuit chain(1, 0);
    chain.rz(0, Angle8::from_k(1)).h(0);
    return std::vector<Demo>{
        {"bell", "H, CX on |00>: (|00> + |11>)/sqrt2", mbqc::from_zero_inputs(bell)},
        {"ghz", "H, CX, CX on |000>: (|000> + |111>)/sqrt2", mbqc::from_zero_inputs(ghz)},
        {"chain", "H RZ(pi/4) on |+>", chain},
    };
  }();
  return all;
}

const Demo* find_demo(std::string_view name) {
  const auto& all = demos();
  auto it = std::find_if(all.begin(), all.end(), [&](const Demo& d) { return d.name == name; });
  return it == all.end() ? nullptr : &*it;
}

qsim::Distribution reference_distribution(const qsim::Circuit& source) {
  const int n = source.num_qubits();
  qsim::Circuit c(n, n);
  for (int q = 0; q < n; ++q) c.h(q);
  for (const auto& g : source.instructions()) c.push(g);
  for (int q = 0; q < n; ++q) c.measure(q, q);
  return qsim::outcome_distribution(c);
}

}  // namespace bqc::protocol
