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

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "eqcom/commitment.hpp"

namespace eqcom {

struct SessionId {
  std::uint32_t value = 0;

  friend auto operator<=>(const SessionId&, const SessionId&) = default;
};

/// Connection-level messages (PARAMS) travel on session 0.
inline constexpr SessionId kConnectionSession{0};

enum class MessageKind : std::uint8_t {
  kParams = 1,
  kFirstMsg = 2,
  kCommit = 3,
  kOpen = 4,
  kAccept = 5,
  kReject = 6,
};

std::string_view kind_name(MessageKind kind);
std::optional<MessageKind> kind_from_name(std::string_view name);

/// PARAMS carries GroupParams, FIRST_MSG the base B, COMMIT the element Z,
/// OPEN an Opening, ACCEPT/REJECT nothing.
using Payload = std::variant<std::monostate, GroupParams, GroupElement, Opening>;

struct ProtocolMessage {
  SessionId session;
  MessageKind kind;
  Payload payload;

  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

ProtocolMessage params_message(const GroupParams& params);
ProtocolMessage first_message(SessionId id, const GroupElement& base);
ProtocolMessage commit_message(SessionId id, const Commitment& z);
ProtocolMessage open_message(SessionId id, const Opening& o);
ProtocolMessage accept_message(SessionId id);
ProtocolMessage reject_message(SessionId id);

/// The element carried by FIRST_MSG or COMMIT; throws kPayloadLength otherwise.
const GroupElement& element_payload(const ProtocolMessage& m);
const Opening& opening_payload(const ProtocolMessage& m);
const GroupParams& params_payload(const ProtocolMessage& m);

// Frame layout, all integers big-endian:
//   u32 total frame length (header included) | u32 session | u8 kind | payload
inline constexpr std::size_t kFrameHeaderSize = 9;
inline constexpr std::size_t kMaxFrameSize = std::size_t{1} << 20;

Bytes encode_message(const ProtocolMessage& m);

/// Decodes exactly one frame. Errors: kTruncatedFrame, kFrameLength,
/// kUnknownKind, kPayloadLength, and the element/scalar/params validation
/// codes (kOutOfRange, kNotInSubgroup, kInvalidParams).
ProtocolMessage decode_message(ByteView frame, const Group& group);
/// Before negotiation: only PARAMS decodes, anything else is kOutOfPhase.
ProtocolMessage decode_message(ByteView frame);

/// Session id of a frame whose header is intact, for failing the session a
/// malformed frame belongs to.
std::optional<SessionId> peek_session(ByteView frame);

}  // namespace eqcom
