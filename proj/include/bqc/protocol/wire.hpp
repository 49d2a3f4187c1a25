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
#include <string_view>
#include <variant>

#include "bqc/qsim/circuit.hpp"
#include "bqc/qsim/simulate.hpp"

namespace bqc::protocol {

struct SubmitMessage {
  std::string job_id;
  qsim::Circuit circuit;
  std::uint64_t shots = 0;
  friend bool operator==(const SubmitMessage&, const SubmitMessage&) = default;
};

struct ResultMessage {
  std::string job_id;
  qsim::Counts counts;
  friend bool operator==(const ResultMessage&, const ResultMessage&) = default;
};

struct ErrorMessage {
  std::string job_id;
  std::string message;
  friend bool operator==(const ErrorMessage&, const ErrorMessage&) = default;
};

/// Everything that crosses the client/server boundary. None of the
/// alternatives has room for client secrets.
using WireMessage = std::variant<SubmitMessage, ResultMessage, ErrorMessage>;

class WireError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One JSON object followed by '\n'. Keys are emitted in sorted order, so
/// equal messages encode to equal bytes.
std::string encode(const WireMessage& m);

/// Parses one line (trailing '\n' optional). Unknown kinds, missing or extra
/// fields, and circuits outside the closed gate set throw WireError.
WireMessage decode(std::string_view line);

}  // namespace bqc::protocol
