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

#include "bqc/mbqc/pattern.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace bqc::mbqc {

namespace {
[[noreturn]] void invalid(const std::string& msg) { throw std::invalid_argument("pattern: " + msg); }
}  // namespace

const char* role_name(NodeRole role) {
  switch (role) {
    case NodeRole::Input: return "in";
    case NodeRole::Body: return "body";
    default: return "out";
  }
}

Pattern::Pattern(std::vector<Node> nodes, std::vector<Edge> edges) : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id != static_cast<int>(i)) invalid("node ids must equal their position");
    if (n.wire < 0) invalid("negative wire index");
    if (i > 0 && n.wire < nodes_[i - 1].wire) invalid("nodes must be ordered wire-major");
    if (n.measured() != n.angle.has_value()) {
      invalid("node " + std::to_string(n.id) + (n.measured() ? " lacks an angle" : " is an output with an angle"));
    }
    num_wires_ = std::max(num_wires_, n.wire + 1);
  }

  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a == b) invalid("self loop on node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= static_cast<int>(nodes_.size()) || b >= static_cast<int>(nodes_.size())) {
      invalid("edge endpoint out of range");
    }
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) invalid("duplicate edge");
  }
  edges_.assign(seen.begin(), seen.end());

  // Every wire: in (body)* out, and its intra-wire edges form exactly the chain path.
  for (int w = 0; w < num_wires_; ++w) {
    const auto ids = wire_nodes(w);
    if (ids.empty()) invalid("wire " + std::to_string(w) + " has no nodes");
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const NodeRole expect = k + 1 == ids.size() ? NodeRole::Output : (k == 0 ? NodeRole::Input : NodeRole::Body);
      if (nodes_[ids[k]].role != expect) invalid("wire " + std::to_string(w) + " roles are not in/body/out");
    }
    std::set<Edge> chain;
    for (std::size_t k = 0; k + 1 < ids.size(); ++k) chain.insert({ids[k], ids[k + 1]});
    std::set<Edge> intra;
    for (const auto& e : edges_) {
      if (nodes_[e.first].wire == w && nodes_[e.second].wire == w) intra.insert(e);
    }
    if (intra != chain) invalid("wire " + std::to_string(w) + " is not a 1D chain");
  }
}

std::vector<int> Pattern::measured_nodes() const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (n.measured()) out.push_back(n.id);
  }
  return out;
}

std::vector<int> Pattern::output_nodes() const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (!n.measured()) out.push_back(n.id);
  }
  return out;
}

std::vector<int> Pattern::wire_nodes(int wire) const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (n.wire == wire) out.push_back(n.id);
  }
  return out;
}

int Pattern::output_of_wire(int wire) const { return wire_nodes(wire).back(); }
int Pattern::input_of_wire(int wire) const { return wire_nodes(wire).front(); }

Pattern Pattern::with_angles(const std::vector<std::pair<int, Angle8>>& angles) const {
  auto nodes = nodes_;
  for (const auto& [id, a] : angles) {
    auto& n = nodes.at(static_cast<std::size_t>(id));
    if (!n.measured()) invalid("cannot assign an angle to output node " + std::to_string(id));
    n.angle = a;
  }
  return Pattern(std::move(nodes), edges_);
}

nlohmann::json pattern_to_json(const Pattern& p) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : p.nodes()) {
    nlohmann::json j{{"id", n.id}, {"wire", n.wire}, {"role", role_name(n.role)}};
    if (n.angle) j["k"] = n.angle->k();
    nodes.push_back(std::move(j));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : p.edges()) edges.push_back({a, b});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Pattern pattern_from_json(const nlohmann::json& j) {
  try {
    std::vector<Node> nodes;
    for (const auto& jn : j.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<int>();
      n.wire = jn.at("wire").get<int>();
      const auto role = jn.at("role").get<std::string>();
      if (role == "in") {
        n.role = NodeRole::Input;
      } else if (role == "body") {
        n.role = NodeRole::Body;
      } else if (role == "out") {
        n.role = NodeRole::Output;
      } else {
        invalid("unknown role '" + role + "'");
      }
      if (jn.contains("k")) n.angle = Angle8::from_k(jn.at("k").get<int>());
      nodes.push_back(n);
    }
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    return Pattern(std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  } catch (const std::out_of_range& e) {
    invalid(e.what());
  }
}

}  // namespace bqc::mbqc
