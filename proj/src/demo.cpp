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

#include "eqcom/demo.hpp"

#include <exception>
#include <thread>

#include "eqcom/error.hpp"

namespace eqcom {

namespace {

void send_all(ByteStream& stream, Transcript& t, const std::vector<ProtocolMessage>& msgs) {
  for (const auto& m : msgs) {
    write_frame(stream, encode_message(m));
    t.append(Direction::kSent, m);
  }
}

std::optional<ProtocolMessage> try_decode(ByteView frame, const std::optional<Group>& group) {
  try {
    return group ? decode_message(frame, *group) : decode_message(frame);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool decided(const SessionState& s) {
  return s.phase == Phase::kFailed || s.verdict != Verdict::kPending;
}

}  // namespace

PartyOutcome serve_receiver(ByteStream& stream, const Group& group, ReceiverMode mode,
                            std::size_t session_count, ByteView seed) {
  ReceiverEndpoint endpoint(group, mode);
  Transcript transcript;
  send_all(stream, transcript, {params_message(group.params())});
  for (std::size_t i = 0; i < session_count; ++i) {
    HashDrbg rng(derive_seed(seed, "receiver", static_cast<std::uint32_t>(i)));
    send_all(stream, transcript, endpoint.start_session(rng));
  }

  auto all_decided = [&] {
    for (const auto& [id, s] : endpoint.sessions()) {
      if (!decided(s)) return false;
    }
    return true;
  };
  while (!all_decided()) {
    auto frame = read_frame(stream);
    if (!frame) break;
    if (auto m = try_decode(*frame, group)) transcript.append(Direction::kReceived, *m);
    send_all(stream, transcript, endpoint.on_frame(*frame));
  }
  stream.close_write();
  while (read_frame(stream)) {
  }
  return {endpoint.sessions(), std::move(transcript)};
}

PartyOutcome serve_committer(ByteStream& stream,
                             const std::function<Scalar(SessionId, const Group&)>& value_for,
                             ByteView seed) {
  CommitterEndpoint endpoint;
  Transcript transcript;
  while (auto frame = read_frame(stream)) {
    auto reply = endpoint.on_frame(*frame);
    auto group = endpoint.group();
    auto m = try_decode(*frame, group);
    if (m) transcript.append(Direction::kReceived, *m);
    send_all(stream, transcript, reply);
    if (!m || m->kind != MessageKind::kFirstMsg) continue;
    if (endpoint.session(m->session).phase != Phase::kAwaitCommit) continue;

    HashDrbg rng(derive_seed(seed, "committer", m->session.value));
    Scalar x = value_for(m->session, *group);
    Scalar r = random_scalar(group->field(), rng);
    send_all(stream, transcript, endpoint.commit(m->session, x, r));
    send_all(stream, transcript, endpoint.reveal(m->session));
  }
  stream.close_write();
  return {endpoint.sessions(), std::move(transcript)};
}

std::pair<PartyOutcome, PartyOutcome> run_demo(
    ByteStream& receiver_end, ByteStream& committer_end, const Group& group,
    ReceiverMode mode, std::size_t session_count,
    const std::function<Scalar(SessionId, const Group&)>& value_for, ByteView seed) {
  PartyOutcome committer;
  std::exception_ptr committer_error;
  std::thread worker([&] {
    try {
      committer = serve_committer(committer_end, value_for, seed);
    } catch (...) {
      committer_error = std::current_exception();
      committer_end.close_write();
    }
  });
  PartyOutcome receiver;
  try {
    receiver = serve_receiver(receiver_end, group, mode, session_count, seed);
  } catch (...) {
    receiver_end.close_write();
    worker.join();
    throw;
  }
  worker.join();
  if (committer_error) std::rethrow_exception(committer_error);
  return {std::move(receiver), std::move(committer)};
}

}  // namespace eqcom
