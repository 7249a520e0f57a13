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

#include "eqcom/message.hpp"

#include <array>

#include "eqcom/error.hpp"

namespace eqcom {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {
    "PARAMS", "FIRST_MSG", "COMMIT", "OPEN", "ACCEPT", "REJECT"};

}  // namespace

std::string_view kind_name(MessageKind kind) {
  auto i = static_cast<std::size_t>(kind);
  return i >= 1 && i <= kKindNames.size() ? kKindNames[i - 1] : "UNKNOWN";
}

std::optional<MessageKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MessageKind>(i + 1);
  }
  return std::nullopt;
}

ProtocolMessage params_message(const GroupParams& params) {
  return {kConnectionSession, MessageKind::kParams, params};
}
ProtocolMessage first_message(SessionId id, const GroupElement& base) {
  return {id, MessageKind::kFirstMsg, base};
}
ProtocolMessage commit_message(SessionId id, const Commitment& z) {
  return {id, MessageKind::kCommit, z.value};
}
ProtocolMessage open_message(SessionId id, const Opening& o) {
  return {id, MessageKind::kOpen, o};
}
ProtocolMessage accept_message(SessionId id) { return {id, MessageKind::kAccept, {}}; }
ProtocolMessage reject_message(SessionId id) { return {id, MessageKind::kReject, {}}; }

namespace {

template <typename T>
const T& payload_as(const ProtocolMessage& m) {
  const T* p = std::get_if<T>(&m.payload);
  if (p == nullptr) fail(Errc::kPayloadLength, "payload does not match message kind");
  return *p;
}

bool payload_matches_kind(const ProtocolMessage& m) {
  switch (m.kind) {
    case MessageKind::kParams:
      return std::holds_alternative<GroupParams>(m.payload);
    case MessageKind::kFirstMsg:
    case MessageKind::kCommit:
      return std::holds_alternative<GroupElement>(m.payload);
    case MessageKind::kOpen:
      return std::holds_alternative<Opening>(m.payload);
    case MessageKind::kAccept:
    case MessageKind::kReject:
      return std::holds_alternative<std::monostate>(m.payload);
  }
  return false;
}

struct FrameHeader {
  std::size_t length;
  SessionId session;
  std::uint8_t tag;
};

FrameHeader read_header(ByteView frame) {
  if (frame.size() < kFrameHeaderSize) fail(Errc::kTruncatedFrame, "frame shorter than header");
  FrameHeader h{read_u32_be(frame), SessionId{read_u32_be(frame.subspan(4))}, frame[8]};
  if (h.length < kFrameHeaderSize || h.length > kMaxFrameSize) {
    fail(Errc::kFrameLength, "frame length field out of bounds");
  }
  if (frame.size() < h.length) fail(Errc::kTruncatedFrame, "frame shorter than its length field");
  if (frame.size() > h.length) fail(Errc::kFrameLength, "trailing bytes after frame");
  if (h.tag < 1 || h.tag > kKindNames.size()) fail(Errc::kUnknownKind, "unknown message kind");
  return h;
}

ProtocolMessage decode_impl(ByteView frame, const Group* group) {
  FrameHeader h = read_header(frame);
  auto kind = static_cast<MessageKind>(h.tag);
  ByteView payload = frame.subspan(kFrameHeaderSize);
  if (kind == MessageKind::kParams) {
    if (payload.size() < 2 ||
        payload.size() != 2 + 3 * ((std::size_t{payload[0]} << 8) | payload[1])) {
      fail(Errc::kPayloadLength, "PARAMS payload length mismatch");
    }
    return {h.session, kind, decode_params(payload)};
  }
  if (group == nullptr) fail(Errc::kOutOfPhase, "group parameters not negotiated yet");

  auto expect_length = [&](std::size_t n) {
    if (payload.size() != n) {
      fail(Errc::kPayloadLength, std::string(kind_name(kind)) + " payload length mismatch");
    }
  };
  switch (kind) {
    case MessageKind::kFirstMsg:
    case MessageKind::kCommit:
      expect_length(group->element_length());
      return {h.session, kind, decode_element(payload, *group)};
    case MessageKind::kOpen:
      expect_length(2 * group->field().byte_length());
      return {h.session, kind, decode_opening(payload, group->field())};
    default:
      expect_length(0);
      return {h.session, kind, std::monostate{}};
  }
}

}  // namespace

const GroupElement& element_payload(const ProtocolMessage& m) {
  return payload_as<GroupElement>(m);
}
const Opening& opening_payload(const ProtocolMessage& m) { return payload_as<Opening>(m); }
const GroupParams& params_payload(const ProtocolMessage& m) {
  return payload_as<GroupParams>(m);
}

Bytes encode_message(const ProtocolMessage& m) {
  if (!payload_matches_kind(m)) fail(Errc::kPayloadLength, "payload does not match message kind");
  Bytes payload = std::visit(
      [](const auto& p) -> Bytes {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, GroupParams>) {
          return encode_params(p);
        } else if constexpr (std::is_same_v<T, GroupElement>) {
          return encode_element(p);
        } else {
          return encode_opening(p);
        }
      },
      m.payload);
  Bytes out;
  out.reserve(kFrameHeaderSize + payload.size());
  append_u32_be(out, static_cast<std::uint32_t>(kFrameHeaderSize + payload.size()));
  append_u32_be(out, m.session.value);
  out.push_back(static_cast<std::uint8_t>(m.kind));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

ProtocolMessage decode_message(ByteView frame, const Group& group) {
  return decode_impl(frame, &group);
}

ProtocolMessage decode_message(ByteView frame) { return decode_impl(frame, nullptr); }

std::optional<SessionId> peek_session(ByteView frame) {
  if (frame.size() < 8) return std::nullopt;
  return SessionId{read_u32_be(frame.subspan(4))};
}

}  // namespace eqcom
