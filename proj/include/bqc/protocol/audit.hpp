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

#include <cstddef>
#include <string>
#include <vector>

#include "bqc/protocol/filter.hpp"
#include "bqc/protocol/wire.hpp"

namespace bqc::protocol {

struct AuditReport {
  /// Every logged circuit equals the first one outside the delta and alpha
  /// rotations (job ids are bookkeeping and are ignored).
  bool structure_identical = false;
  /// Every RZ sits on a delta or alpha slot and carries exactly that value.
  bool angles_accounted = false;
  /// No logged message has a secret-bearing field name at any depth.
  bool no_secret_fields = false;
  std::size_t delta_samples = 0;
  double delta_p_value = 0;
  bool delta_uniform = false;
  bool passed = false;
  std::vector<std::string> findings;
};

/// Audits the server's log of several runs of one source circuit. log[i]
/// must be the submission made with secrets[i]. The delta marginal is
/// pooled over all nodes of all runs and needs at least `min_samples`
/// values and a chi-square p-value above 0.001.
AuditReport blindness_audit(const std::vector<SubmitMessage>& log, const std::vector<ClientSecrets>& secrets,
                            std::size_t min_samples = 800);

}  // namespace bqc::protocol
