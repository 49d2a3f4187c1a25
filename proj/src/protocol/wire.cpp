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

#include "bqc/protocol/wire.hpp"

#include <json.hpp>
#include <set>

#include "bqc/qsim/circuit_json.hpp"

namespace bqc::protocol {

using nlohmann::json;

namespace {

struct Encoder {
  json operator()(const SubmitMessage& m) const {
    return {{"kind", "submit"}, {"job_id", m.job_id}, {"circuit", qsim::circuit_to_json(m.circuit)}, {"shots", m.shots}};
  }
  json operator()(const ResultMessage& m) const {
    json counts = json::object();
    for (const auto& [bits, n] : m.counts) counts[bits] = n;
    return {{"kind", "result"}, {"job_id", m.job_id}, {"counts", counts}};
  }
  json operator()(const ErrorMessage& m) const {
    return {{"kind", "error"}, {"job_id", m.job_id}, {"message", m.message}};
  }
};

void expect_keys(const json& j, const std::set<std::string>& keys) {
  std::set<std::string> got;
  for (const auto& [k, v] : j.items()) got.insert(k);
  if (got != keys) throw WireError("unexpected field set for message kind " + j.value("kind", std::string("?")));
}

}  // namespace

std::string encode(const WireMessage& m) { return std::visit(Encoder{}, m).dump() + "\n"; }

WireMessage decode(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (line.find('\n') != std::string_view::npos) throw WireError("message spans more than one line");
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw WireError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw WireError("message without a kind");
  try {
    const auto kind = j["kind"].get<std::string>();
    if (kind == "submit") {
      expect_keys(j, {"kind", "job_id", "circuit", "shots"});
      if (!j["shots"].is_number_unsigned()) throw WireError("shots must be a non-negative integer");
      return SubmitMessage{j["job_id"].get<std::string>(), qsim::circuit_from_json(j["circuit"]),
                           j["shots"].get<std::uint64_t>()};
    }
    if (kind == "result") {
      expect_keys(j, {"kind", "job_id", "counts"});
      ResultMessage m{j["job_id"].get<std::string>(), {}};
      for (const auto& [bits, n] : j["counts"].items()) {
        if (!n.is_number_unsigned()) throw WireError("counts must be non-negative integers");
        m.counts[bits] = n.get<std::uint64_t>();
      }
      return m;
    }
    if (kind == "error") {
      expect_keys(j, {"kind", "job_id", "message"});
      return ErrorMessage{j["job_id"].get<std::string>(), j["message"].get<std::string>()};
    }
    throw WireError("unknown message kind '" + kind + "'");
  } catch (const WireError&) {
    throw;
  } catch (const std::exception& e) {
    throw WireError(std::string("invalid message: ") + e.what());
  }
}

}  // namespace bqc::protocol
