// Copyright 2026 The eqcom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "eqcom/bytes.hpp"

namespace eqcom {

/// Reliable, ordered, duplex byte stream.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  virtual void write_all(ByteView data) = 0;
  /// Blocks until at least one byte is available; returns 0 at end of stream.
  virtual std::size_t read_some(std::span<std::uint8_t> out) = 0;
  /// Half-close: the peer reads end of stream once buffered bytes drain.
  virtual void close_write() = 0;
};

/// Two connected in-process endpoints.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_loopback_pair();

/// TCP stream over a connected socket; owns the descriptor.
class SocketStream final : public ByteStream {
 public:
  explicit SocketStream(int fd) : fd_(fd) {}
  ~SocketStream() override;
  SocketStream(const SocketStream&) = delete;
  SocketStream& operator=(const SocketStream&) = delete;

  static std::unique_ptr<SocketStream> connect(const std::string& host, std::uint16_t port);

  void write_all(ByteView data) override;
  std::size_t read_some(std::span<std::uint8_t> out) override;
  void close_write() override;

 private:
  int fd_;
};

class SocketListener {
 public:
  /// Binds to `host`:`port`; port 0 picks an ephemeral port.
  SocketListener(const std::string& host, std::uint16_t port);
  ~SocketListener();
  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<SocketStream> accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

void write_frame(ByteStream& stream, ByteView frame);
/// Reads one length-prefixed frame, or nullopt on a clean end of stream.
/// Throws kTruncatedFrame when the stream ends mid-frame and kFrameLength for
/// an out-of-bounds length field.
std::optional<Bytes> read_frame(ByteStream& stream);

}  // namespace eqcom
