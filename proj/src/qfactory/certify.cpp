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

#include "bqc/qfactory/certify.hpp"

#include <set>
#include <stdexcept>

#include "bqc/qsim/simulate.hpp"

namespace bqc::qfactory {

namespace {

struct Enumerated {
  RspOutcome outcome;
  double probability;
  bool zero;
  qsim::Statevector residual;
};

std::vector<Enumerated> enumerate(const RspInstance& inst) {
  std::vector<Enumerated> out;
  for (auto& b : qsim::enumerate_branches(build_rsp_circuit(inst))) {
    out.push_back({read_outcome(inst, b.bits), b.probability, b.zero_probability, std::move(b.residual)});
  }
  std::sort(out.begin(), out.end(),
            [](const Enumerated& a, const Enumerated& b) { return a.outcome.substring() < b.outcome.substring(); });
  return out;
}

bool branch_certifies(const RspInstance& inst, const Enumerated& e) {
  if (e.zero) return true;
  try {
    const Angle8 theta = theta_for_outcome(inst, e.outcome);
    return qsim::fidelity(e.residual, qsim::Statevector::plus(theta)) >= 1 - kCertifyTolerance;
  } catch (const std::runtime_error&) {
    return false;
  }
}

}  // namespace

CertifyReport certify(const RspInstance& inst) {
  CertifyReport r;
  r.alpha = inst.alpha;
  r.passed = true;
  for (const auto& e : enumerate(inst)) {
    BranchCertificate c;
    c.outcome = e.outcome;
    c.probability = e.probability;
    r.total_probability += e.probability;
    try {
      c.theta = theta_for_outcome(inst, e.outcome);
      if (!e.zero) c.fidelity = qsim::fidelity(e.residual, qsim::Statevector::plus(*c.theta));
      c.ok = e.zero || c.fidelity >= 1 - kCertifyTolerance;
      if (!c.ok) c.error = "residual does not match |+_theta>";
      r.theta_weight[c.theta->k()] += e.probability;
    } catch (const std::runtime_error& ex) {
      c.error = ex.what();
      c.ok = e.zero;
    }
    r.passed = r.passed && c.ok;
    r.branches.push_back(std::move(c));
  }
  return r;
}

nlohmann::json report_to_json(const CertifyReport& r) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : r.branches) {
    nlohmann::json j{{"outcome", b.outcome.substring()}, {"probability", b.probability}, {"ok", b.ok}};
    if (b.theta) {
      j["theta_k"] = b.theta->k();
      j["fidelity"] = b.fidelity;
    }
    if (!b.error.empty()) j["error"] = b.error;
    branches.push_back(std::move(j));
  }
  return {{"alpha", {r.alpha[0].k(), r.alpha[1].k()}},
          {"passed", r.passed},
          {"total_probability", r.total_probability},
          {"theta_weight", r.theta_weight},
          {"branches", std::move(branches)}};
}

std::vector<RspReadout> readout_candidates() {
  std::vector<RspReadout> out;
  for (auto squeezed : {SqueezedPair::Controls, SqueezedPair::Targets}) {
    for (auto image : {ImageSource::ComputationalPair, ImageSource::SqueezedPair}) {
      for (int p0 = 0; p0 < 3; ++p0) {
        for (int p1 = 0; p1 < 3; ++p1) {
          if (p0 == p1) continue;
          for (int sign = 0; sign <= 6; ++sign) out.push_back({squeezed, image, {p0, p1}, sign});
        }
      }
    }
  }
  return out;
}

std::vector<RspReadout> calibrate_readout() {
  auto candidates = readout_candidates();
  std::vector<bool> alive(candidates.size(), true);
  for (int e = 0; e < 2; ++e) {
    const auto key = TrapdoorKey::make(1, e);
    for (int a0 = 0; a0 < 8; ++a0) {
      for (int a1 = 0; a1 < 8; ++a1) {
        RspInstance inst = make_instance(key, {Angle8::from_k(a0), Angle8::from_k(a1)});
        // The circuit only depends on which pair is squeezed and where y is
        // recorded, so enumerate once per such shape.
        for (auto squeezed : {SqueezedPair::Controls, SqueezedPair::Targets}) {
          for (auto image : {ImageSource::ComputationalPair, ImageSource::SqueezedPair}) {
            inst.readout = {squeezed, image, {0, 1}, 0};
            const auto branches = enumerate(inst);
            for (std::size_t c = 0; c < candidates.size(); ++c) {
              if (!alive[c] || candidates[c].squeezed != squeezed || candidates[c].image != image) continue;
              RspInstance probe = inst;
              probe.readout = candidates[c];
              for (const auto& b : branches) {
                if (!branch_certifies(probe, b)) {
                  alive[c] = false;
                  break;
                }
              }
            }
          }
        }
      }
    }
  }
  std::vector<RspReadout> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (alive[c]) out.push_back(candidates[c]);
  }
  return out;
}

std::vector<Angle8> reachable_thetas(const RspInstance& inst) {
  std::set<Angle8> s;
  for (const auto& o : all_outcomes()) s.insert(theta_for_outcome(inst, o));
  return {s.begin(), s.end()};
}

}  // namespace bqc::qfactory
