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

#include <json.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "bqc/angle8.hpp"

namespace bqc::mbqc {

enum class NodeRole { Input, Body, Output };

struct Node {
  int id = 0;
  int wire = 0;
  NodeRole role = NodeRole::Output;
  /// X-Y plane measurement angle; absent exactly for output nodes.
  std::optional<Angle8> angle;

  bool measured() const { return role != NodeRole::Output; }
  friend bool operator==(const Node&, const Node&) = default;
};

using Edge = std::pair<int, int>;

/// Measurement pattern over per-wire 1D chains joined by CZ bridges.
///
/// Nodes are ordered wire-major, then by chain position, and node ids equal
/// their index in that order. Each wire is a chain ending in exactly one
/// output node; a wire holding only its output node passes its input
/// straight through.
class Pattern {
 public:
  Pattern() = default;
  /// Validates every invariant; throws std::invalid_argument otherwise.
  Pattern(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  /// Sorted, each stored as (low, high).
  const std::vector<Edge>& edges() const { return edges_; }

  int num_wires() const { return num_wires_; }
  std::vector<int> measured_nodes() const;
  std::vector<int> output_nodes() const;
  /// Node ids of one wire, in chain order.
  std::vector<int> wire_nodes(int wire) const;
  int output_of_wire(int wire) const;
  int input_of_wire(int wire) const;

  /// Same graph with every measured angle replaced.
  Pattern with_angles(const std::vector<std::pair<int, Angle8>>& angles) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  int num_wires_ = 0;
};

const char* role_name(NodeRole role);

/// {"nodes":[{"id","wire","role":"in|body|out","k"?}],"edges":[[a,b]]}
nlohmann::json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const nlohmann::json& j);

}  // namespace bqc::mbqc
