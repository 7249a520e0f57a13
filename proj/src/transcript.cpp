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

#include "eqcom/transcript.hpp"

#include "eqcom/error.hpp"

namespace eqcom {

std::uint64_t Transcript::append(Direction direction, ProtocolMessage message) {
  std::uint64_t step = next_step_;
  append_at(step, direction, std::move(message));
  return step;
}

void Transcript::append_at(std::uint64_t step, Direction direction, ProtocolMessage message) {
  if (!entries_.empty() && step <= entries_.back().step) {
    fail(Errc::kInvalidSchedule, "transcript steps must strictly increase");
  }
  entries_.push_back({direction, std::move(message), step});
  next_step_ = step + 1;
}

Transcript Transcript::for_session(SessionId id) const {
  Transcript out;
  for (const auto& e : entries_) {
    if (e.message.session == id) out.append_at(e.step, e.direction, e.message);
  }
  return out;
}

Bytes encode_eqct(const Transcript& t) {
  Bytes out;
  for (const auto& e : t.entries()) {
    out.push_back(static_cast<std::uint8_t>(e.direction));
    Bytes frame = encode_message(e.message);
    out.insert(out.end(), frame.begin(), frame.end());
  }
  return out;
}

Transcript decode_eqct(ByteView bytes, std::optional<Group> group) {
  Transcript out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::uint8_t dir = bytes[pos++];
    if (dir > 1) fail(Errc::kOutOfRange, "invalid direction byte in transcript");
    if (bytes.size() - pos < 4) fail(Errc::kTruncatedFrame, "transcript frame truncated");
    std::size_t len = read_u32_be(bytes.subspan(pos));
    if (len < kFrameHeaderSize || len > kMaxFrameSize) {
      fail(Errc::kFrameLength, "transcript frame length out of bounds");
    }
    if (bytes.size() - pos < len) fail(Errc::kTruncatedFrame, "transcript frame truncated");
    ByteView frame = bytes.subspan(pos, len);
    ProtocolMessage m = group ? decode_message(frame, *group) : decode_message(frame);
    if (m.kind == MessageKind::kParams && !group) group.emplace(params_payload(m));
    out.append(static_cast<Direction>(dir), std::move(m));
    pos += len;
  }
  return out;
}

}  // namespace eqcom
