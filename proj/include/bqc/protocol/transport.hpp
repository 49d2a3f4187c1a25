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

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqc/protocol/server.hpp"
#include "bqc/protocol/wire.hpp"

namespace bqc::protocol {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request/reply channel to a server. Every line sent or received is kept
/// in log(), so a test can check that only wire messages ever crossed.
class Transport {
 public:
  virtual ~Transport() = default;
  WireMessage exchange(const WireMessage& request);
  const std::vector<std::string>& log() const { return log_; }

 protected:
  virtual std::string round_trip(const std::string& line) = 0;

 private:
  std::vector<std::string> log_;
};

class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(Server& server) : server_(server) {}

 protected:
  std::string round_trip(const std::string& line) override { return server_.handle_line(line); }

 private:
  Server& server_;
};

/// Connects on construction; throws TransportError when unreachable.
class TcpTransport : public Transport {
 public:
  explicit TcpTransport(const std::string& address);
  ~TcpTransport() override;

 protected:
  std::string round_trip(const std::string& line) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bqc::protocol
