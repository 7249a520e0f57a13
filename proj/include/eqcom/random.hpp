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
#include <span>
#include <string_view>

#include "eqcom/bytes.hpp"

namespace eqcom {

/// Caller-owned source of random bytes. Implementations are not thread-safe;
/// each thread or session owns its own instance.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// Deterministic generator: SHA-256 in counter mode over a hashed seed.
/// Two instances built from the same seed emit identical streams.
class HashDrbg final : public RandomSource {
 public:
  explicit HashDrbg(ByteView seed);
  explicit HashDrbg(std::string_view seed) : HashDrbg(as_bytes(seed)) {}

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  Digest key_{};
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = sizeof(Digest);
};

/// Replays a fixed byte script, for forcing specific draws in tests and
/// replays. Throws Error(kIo) once the script runs out.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(Bytes script) : script_(std::move(script)) {}

  void fill(std::span<std::uint8_t> out) override;
  std::size_t remaining() const { return script_.size() - pos_; }

 private:
  Bytes script_;
  std::size_t pos_ = 0;
};

/// Keyed fan-out of a master seed: HMAC-SHA256(master, label || index).
Bytes derive_seed(ByteView master, std::string_view label, std::uint32_t index);

}  // namespace eqcom
