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

#include "bqc/protocol/client.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>

#include "bqc/mbqc/compile.hpp"
#include "bqc/mbqc/frame.hpp"
#include "bqc/qfactory/certify.hpp"
#include "bqc/qfactory/trapdoor.hpp"

namespace bqc::protocol {

namespace {

using Alpha = std::array<Angle8, 2>;

Alpha alpha_of(int index) { return {Angle8::from_k(index >> 3), Angle8::from_k(index & 7)}; }

// For each key (indexed by e) and target theta, the alpha settings whose
// gadget reaches it. Only the two valid keys exist, so this is a constant.
const std::array<std::array<std::vector<int>, 8>, 2>& alpha_table() {
  static const auto table = [] {
    std::array<std::array<std::vector<int>, 8>, 2> t;
    for (int e = 0; e < 2; ++e) {
      const auto key = qfactory::TrapdoorKey::make(1, e);
      for (int a = 0; a < 64; ++a) {
        const auto inst = qfactory::make_instance(key, alpha_of(a), qfactory::key_oblivious_layout(key, 0, 0));
        for (Angle8 th : qfactory::reachable_thetas(inst)) t[e][th.k()].push_back(a);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t default_shot_budget(int gadgets) {
  const int exponent = 8 * gadgets;
  return exponent >= 24 ? std::uint64_t{1} << 24 : std::uint64_t{1} << exponent;
}

PreparedJob prepare_job(const qsim::Circuit& source, const ClientOptions& options) {
  const mbqc::Pattern pattern = mbqc::compile_circuit(source);
  std::mt19937_64 rng(options.seed);
  ubqc::BlindedPattern blinded = ubqc::blind(pattern, rng());

  std::optional<mbqc::PauliFrame> frame;
  try {
    frame = mbqc::calibrate_frame(pattern);
  } catch (const mbqc::FrameError&) {
  }

  std::vector<NodeSecret> nodes;
  std::vector<qfactory::RspInstance> instances;
  for (int id : pattern.measured_nodes()) {
    const auto key = qfactory::keygen(rng()).first;
    const Angle8 theta = blinded.theta().at(id);
    const auto& choices = alpha_table()[key.e()][theta.k()];
    const int a = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    auto inst = qfactory::make_instance(key, alpha_of(a), qfactory::key_oblivious_layout(key, 0, 0));
    nodes.push_back({id, inst, theta, qfactory::outcomes_for_theta(inst, theta).front()});
    instances.push_back(std::move(inst));
  }

  const int n = static_cast<int>(instances.size());
  ComposedJob job = compose(blinded, instances, options.swap_reuse, options.shots ? options.shots : default_shot_budget(n));
  char id[20];
  std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(rng()));

  ClientSecrets secrets{std::move(blinded), std::move(nodes), std::move(frame), job.clbits, job.delta_ops,
                        job.alpha_ops,       options.filter,   options.branch};
  return {id, std::move(job), std::move(secrets)};
}

SubmitMessage submit_message(const PreparedJob& prepared) {
  return {prepared.job_id, prepared.job.circuit, prepared.job.shots};
}

FilterReport client_run(const qsim::Circuit& source, const ClientOptions& options, Transport& transport) {
  const PreparedJob prepared = prepare_job(source, options);
  const WireMessage reply = transport.exchange(submit_message(prepared));
  if (const auto* err = std::get_if<ErrorMessage>(&reply)) throw ClientError("server error: " + err->message);
  const auto* result = std::get_if<ResultMessage>(&reply);
  if (!result || result->job_id != prepared.job_id) throw ClientError("reply does not answer this job");
  FilterReport report = filter(result->counts, prepared.secrets);
  if (report.accepted == 0) {
    throw ClientError("no shot passed the filter out of " + std::to_string(report.total) +
                      "; acceptance is about 2^-4n in exact mode, raise the shot count");
  }
  return report;
}

ExactFilterResult client_run_exact(const qsim::Circuit& source, const ClientOptions& options) {
  const PreparedJob prepared = prepare_job(source, options);
  return filter_exact(qsim::outcome_distribution(prepared.job.circuit), prepared.secrets);
}

}  // namespace bqc::protocol
