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

#include <string>
#include <string_view>
#include <vector>

#include "bqc/qsim/circuit.hpp"
#include "bqc/qsim/simulate.hpp"

namespace bqc::protocol {

struct Demo {
  std::string name;
  std::string summary;
  /// Acts on |+...+>, the compiler's input convention.
  qsim::Circuit source;
};

/// bell, ghz and chain.
const std::vector<Demo>& demos();
/// nullptr for an unknown name.
const Demo* find_demo(std::string_view name);

/// Direct circuit-model answer: H on every qubit, the source, then a
/// computational measurement of qubit q into clbit q.
qsim::Distribution reference_distribution(const qsim::Circuit& source);

inline constexpr double kSampledTvdTolerance = 0.05;
inline constexpr double kExactTvdTolerance = 1e-9;

}  // namespace bqc::protocol
