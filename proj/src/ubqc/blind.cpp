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

#include "bqc/ubqc/blind.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace bqc::ubqc {

using mbqc::Pattern;

RFlags RFlags::protocol(const std::map<int, int>& r) {
  for (const auto& [node, v] : r) {
    if (v != 0) throw std::invalid_argument("protocol mode forbids r = 1 (node " + std::to_string(node) + ")");
  }
  return RFlags(false, {});
}

RFlags RFlags::test(std::map<int, int> r) {
  for (const auto& [node, v] : r) {
    if (v != 0 && v != 1) throw std::invalid_argument("r must be a bit");
  }
  return RFlags(true, std::move(r));
}

int RFlags::r(int node) const {
  auto it = r_.find(node);
  return it == r_.end() ? 0 : it->second;
}

BlindedPattern::BlindedPattern(Pattern pattern, std::map<int, Angle8> theta, RFlags rflags)
    : pattern_(std::move(pattern)), theta_(std::move(theta)), rflags_(std::move(rflags)) {
  const auto measured = pattern_.measured_nodes();
  if (theta_.size() != measured.size()) throw std::invalid_argument("need exactly one theta per measured node");
  for (int id : measured) {
    auto it = theta_.find(id);
    if (it == theta_.end()) throw std::invalid_argument("no theta for node " + std::to_string(id));
    Angle8 d = *pattern_.node(id).angle - it->second;
    if (rflags_.r(id)) d += Angle8::pi();
    delta_[id] = d;
  }
}

Pattern BlindedPattern::server_pattern() const {
  return pattern_.with_angles({delta_.begin(), delta_.end()});
}

BlindedPattern blind(const Pattern& pattern, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k8(0, 7);
  std::map<int, Angle8> theta;
  for (int id : pattern.measured_nodes()) theta[id] = Angle8::from_k(k8(rng));
  return BlindedPattern(pattern, std::move(theta));
}

BlindedPattern blind_with(const Pattern& pattern, std::map<int, Angle8> theta, RFlags rflags) {
  return BlindedPattern(pattern, std::move(theta), std::move(rflags));
}

nlohmann::json server_view_json(const BlindedPattern& b) {
  auto j = mbqc::pattern_to_json(b.server_pattern());
  for (auto& n : j.at("nodes")) n.erase("k");
  nlohmann::json delta = nlohmann::json::object();
  for (const auto& [id, d] : b.delta()) delta[std::to_string(id)] = d.k();
  j["delta"] = std::move(delta);
  return j;
}

qsim::Circuit blinded_input_prep(Angle8 theta) {
  qsim::Circuit c(1, 0);
  c.h(0).rz(0, theta);
  return c;
}

qsim::Circuit lower_blinded(const BlindedPattern& b, const mbqc::LowerOptions& options) {
  mbqc::LowerOptions o = options;
  for (const auto& [id, t] : b.theta()) o.node_phase[id] = t;
  const Pattern server = b.server_pattern();
  return mbqc::lower_to_circuit(server, mbqc::plus_inputs(server), o);
}

std::vector<std::uint8_t> decode_output(const std::vector<std::uint8_t>& outputs,
                                        const std::vector<std::uint8_t>& branch_bits, const mbqc::PauliFrame& frame) {
  if (outputs.size() != frame.output_nodes.size() || branch_bits.size() != frame.measured_nodes.size()) {
    throw std::invalid_argument("decode_output: bit counts do not match the frame");
  }
  const std::uint64_t flips = frame.x_mask(branch_bits);
  auto out = outputs;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= static_cast<std::uint8_t>((flips >> j) & 1);
  return out;
}

}  // namespace bqc::ubqc
