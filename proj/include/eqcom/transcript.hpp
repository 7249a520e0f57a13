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

#include <optional>
#include <vector>

#include "eqcom/message.hpp"

namespace eqcom {

enum class Direction : std::uint8_t { kSent = 0, kReceived = 1 };

struct TranscriptEntry {
  Direction direction;
  ProtocolMessage message;
  std::uint64_t step;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

/// Ordered message log with strictly increasing step indices.
class Transcript {
 public:
  /// Appends at the next step index and returns that index.
  std::uint64_t append(Direction direction, ProtocolMessage message);
  /// Appends at an explicit step; throws kInvalidSchedule unless it exceeds
  /// the last recorded step.
  void append_at(std::uint64_t step, Direction direction, ProtocolMessage message);

  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t next_step() const { return next_step_; }

  /// Entries of one session, keeping their original step indices.
  Transcript for_session(SessionId id) const;

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<TranscriptEntry> entries_;
  std::uint64_t next_step_ = 0;
};

/// ".eqct" byte format: for each entry, one direction byte (0 sent,
/// 1 received) followed by the encoded frame. Step indices are implicit.
Bytes encode_eqct(const Transcript& t);

/// Parses an ".eqct" stream, numbering entries from 0. Non-PARAMS frames need
/// a group: `group` if given, else the group from a preceding PARAMS frame.
Transcript decode_eqct(ByteView bytes, std::optional<Group> group = std::nullopt);

}  // namespace eqcom
