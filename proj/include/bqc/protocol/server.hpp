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

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "bqc/protocol/wire.hpp"

namespace bqc::protocol {

struct ServerLimits {
  int max_qubits = 22;
  std::size_t max_instructions = 1 << 16;
  std::uint64_t max_shots = 10'000'000;
  std::size_t max_line_bytes = 16u << 20;
};

/// Shot seed the server derives from a job id (64-bit FNV-1a), so equal
/// submissions give equal results on every transport.
std::uint64_t job_seed(std::string_view job_id);

/// The honest-but-curious executor. It validates each submission, runs it
/// and keeps an append-only log of what it was asked to run; nothing else
/// is stored or inspected. Safe to call from several threads.
class Server {
 public:
  explicit Server(ServerLimits limits = {}) : limits_(limits) {}

  /// One request line in, one reply line out. Never throws on bad input.
  std::string handle_line(std::string_view line);

  std::vector<SubmitMessage> audit_log() const;
  const ServerLimits& limits() const { return limits_; }

 private:
  ServerLimits limits_;
  mutable std::mutex mu_;
  std::vector<SubmitMessage> log_;
};

/// Newline-delimited JSON over TCP, one thread per connection.
class TcpServer {
 public:
  /// Binds immediately; port 0 picks an ephemeral port.
  TcpServer(Server& server, const std::string& host, std::uint16_t port);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const;
  /// Accepts connections until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// "host:port" split; throws std::invalid_argument.
std::pair<std::string, std::uint16_t> parse_address(const std::string& address);

}  // namespace bqc::protocol
