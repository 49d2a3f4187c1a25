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

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bqc/protocol/compose.hpp"
#include "bqc/protocol/filter.hpp"
#include "bqc/protocol/transport.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::protocol {

class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClientOptions {
  /// 0 selects default_shot_budget().
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  FilterMode filter = FilterMode::ExactSubstring;
  BranchMode branch = BranchMode::FrameDecode;
  bool swap_reuse = false;
};

/// 4^(4n) shots for n gadgets, capped at 2^24.
std::uint64_t default_shot_budget(int gadgets);

struct PreparedJob {
  std::string job_id;
  ComposedJob job;
  ClientSecrets secrets;
};

/// Compile, blind, draw one key and alpha per measured node, compose. The
/// source circuit acts on |+...+> (use mbqc::from_zero_inputs for circuits
/// written against |0...0>). Deterministic in options.seed.
///
/// Theta is uniform per node; alpha is then uniform over the settings whose
/// gadget can reach that theta, so the published delta stays uniform.
PreparedJob prepare_job(const qsim::Circuit& source, const ClientOptions& options);

SubmitMessage submit_message(const PreparedJob& prepared);

/// Submits over `transport` and filters the reply. Throws ClientError on a
/// server error reply or when no shot survives the filter, and
/// TransportError on channel failure.
FilterReport client_run(const qsim::Circuit& source, const ClientOptions& options, Transport& transport);

/// Same preparation, but the composed circuit's exact outcome distribution
/// replaces sampling. A verification mode, not part of the protocol.
ExactFilterResult client_run_exact(const qsim::Circuit& source, const ClientOptions& options);

}  // namespace bqc::protocol
