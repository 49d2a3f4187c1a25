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
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bqc/mbqc/frame.hpp"
#include "bqc/protocol/compose.hpp"
#include "bqc/qfactory/rsp.hpp"
#include "bqc/qsim/simulate.hpp"
#include "bqc/ubqc/blind.hpp"

namespace bqc::protocol {

enum class FilterMode { ExactSubstring, ThetaMatch };
enum class BranchMode { ZeroBranch, FrameDecode };

const char* filter_mode_name(FilterMode m);
const char* branch_mode_name(BranchMode m);

struct NodeSecret {
  int node = -1;
  qfactory::RspInstance rsp;
  Angle8 target_theta;
  /// Lexicographically smallest (y, b) certifying to target_theta.
  qfactory::RspOutcome target_substring;
};

/// Everything the client keeps to itself. There is deliberately no
/// conversion to JSON or to any wire message.
struct ClientSecrets {
  ubqc::BlindedPattern blinded;
  std::vector<NodeSecret> nodes;
  /// Absent when the pattern has no exact Pauli frame; frame decoding is
  /// then unavailable and only zero-branch postselection applies.
  std::optional<mbqc::PauliFrame> frame;
  ClbitMap clbits;
  std::vector<std::size_t> delta_ops;
  std::vector<std::size_t> alpha_ops;
  FilterMode filter = FilterMode::ExactSubstring;
  BranchMode branch = BranchMode::FrameDecode;
};

struct FilterReport {
  std::uint64_t total = 0;
  std::uint64_t accepted = 0;
  double rate = 0;
  /// Decoded output bitstrings, output 0 rightmost.
  std::map<std::string, std::uint64_t> counts;
  friend bool operator==(const FilterReport&, const FilterReport&) = default;
};

/// {"total":int,"accepted":int,"rate":float,"counts":{bits:int}}
nlohmann::json report_to_json(const FilterReport& r);
FilterReport report_from_json(const nlohmann::json& j);

/// Exact counterpart of FilterReport over an outcome distribution.
struct ExactFilterResult {
  double acceptance = 0;
  /// Normalized over accepted weight; empty when nothing is accepted.
  qsim::Distribution distribution;
};

/// Per-node table over the 16 gadget outcomes (index y1 y2 b1 b2 read as a
/// binary number): true where the shot passes this node under `mode`.
std::array<bool, 16> acceptance_table(const NodeSecret& node, FilterMode mode);

/// Throws std::invalid_argument when a shot's width differs from the map,
/// or when frame decoding is requested without a frame.
FilterReport filter(const qsim::Counts& shots, const ClientSecrets& secrets);
ExactFilterResult filter_exact(const qsim::Distribution& outcomes, const ClientSecrets& secrets);

/// Total variation distance; missing keys count as zero.
double total_variation(const qsim::Distribution& a, const qsim::Distribution& b);
qsim::Distribution normalized(const std::map<std::string, std::uint64_t>& counts);

}  // namespace bqc::protocol
