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

#include "bqc/protocol/audit.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>
#include <set>

#include "bqc/qsim/circuit.hpp"

namespace bqc::protocol {

using qsim::GateKind;

namespace {

const std::set<std::string> kSecretFields{"theta", "phi", "d0", "e", "trapdoor", "key", "secret", "frame", "r"};

// Every object key anywhere in the document.
void collect_keys(const nlohmann::json& j, std::set<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      out.insert(k);
      collect_keys(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_keys(v, out);
  }
}

bool same_except_angle(const qsim::Instruction& a, const qsim::Instruction& b) {
  return a.kind == b.kind && a.qubits == b.qubits && a.clbit == b.clbit;
}

}  // namespace

AuditReport blindness_audit(const std::vector<SubmitMessage>& log, const std::vector<ClientSecrets>& secrets,
                            std::size_t min_samples) {
  AuditReport r;
  if (log.empty() || log.size() != secrets.size()) {
    r.findings.push_back("log and secrets must be non-empty and paired");
    return r;
  }

  r.structure_identical = true;
  r.angles_accounted = true;
  r.no_secret_fields = true;
  const auto& ref = log.front().circuit;
  std::array<double, 8> hist{};

  for (std::size_t i = 0; i < log.size(); ++i) {
    const auto& c = log[i].circuit;
    const auto& s = secrets[i];
    std::set<std::size_t> free_slots(s.delta_ops.begin(), s.delta_ops.end());
    free_slots.insert(s.alpha_ops.begin(), s.alpha_ops.end());

    if (c.num_qubits() != ref.num_qubits() || c.num_clbits() != ref.num_clbits() || c.size() != ref.size() ||
        log[i].shots != log.front().shots) {
      r.structure_identical = false;
      r.findings.push_back("run " + std::to_string(i) + ": register or length differs");
      continue;
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto& a = c.instructions()[k];
      const auto& b = ref.instructions()[k];
      if (!same_except_angle(a, b) || (a.angle != b.angle && !free_slots.count(k))) {
        r.structure_identical = false;
        r.findings.push_back("run " + std::to_string(i) + ": instruction " + std::to_string(k) + " differs");
        break;
      }
      if (a.kind == GateKind::RZ && !free_slots.count(k)) {
        r.angles_accounted = false;
        r.findings.push_back("run " + std::to_string(i) + ": RZ outside the delta and alpha slots");
      }
    }

    const auto measured = s.blinded.pattern().measured_nodes();
    for (std::size_t k = 0; k < s.delta_ops.size() && k < measured.size(); ++k) {
      const Angle8 got = c.instructions().at(s.delta_ops[k]).angle;
      if (got != s.blinded.delta().at(measured[k])) {
        r.angles_accounted = false;
        r.findings.push_back("run " + std::to_string(i) + ": delta slot does not hold delta");
      }
      ++hist[got.k()];
      ++r.delta_samples;
    }
    for (std::size_t b = 0; b < s.nodes.size(); ++b) {
      if (2 * b + 1 >= s.alpha_ops.size()) break;
      std::multiset<int> want{(-s.nodes[b].rsp.alpha[0]).k(), (-s.nodes[b].rsp.alpha[1]).k()};
      std::multiset<int> got{c.instructions().at(s.alpha_ops[2 * b]).angle.k(),
                             c.instructions().at(s.alpha_ops[2 * b + 1]).angle.k()};
      if (want != got) {
        r.angles_accounted = false;
        r.findings.push_back("run " + std::to_string(i) + ": alpha slot does not hold -alpha");
      }
    }

    std::set<std::string> keys;
    collect_keys(nlohmann::json::parse(encode(log[i])), keys);
    for (const auto& k : keys) {
      if (kSecretFields.count(k)) {
        r.no_secret_fields = false;
        r.findings.push_back("run " + std::to_string(i) + ": logged message has a field named " + k);
      }
    }
  }

  if (r.delta_samples > 0) {
    const double expected = static_cast<double>(r.delta_samples) / 8.0;
    double stat = 0;
    for (double h : hist) stat += (h - expected) * (h - expected) / expected;
    r.delta_p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(7), stat));
  }
  r.delta_uniform = r.delta_samples >= min_samples && r.delta_p_value > 0.001;
  if (r.delta_samples < min_samples) {
    r.findings.push_back("only " + std::to_string(r.delta_samples) + " delta samples");
  }
  r.passed = r.structure_identical && r.angles_accounted && r.no_secret_fields && r.delta_uniform;
  return r;
}

}  // namespace bqc::protocol
