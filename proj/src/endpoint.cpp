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

#include "eqcom/endpoint.hpp"

namespace eqcom {

Route multiplex(const SessionTable& sessions, const ProtocolMessage& m, Role role) {
  if (m.session == kConnectionSession) {
    return {m.kind == MessageKind::kParams ? RouteKind::kConnection : RouteKind::kUnknownSession,
            m.session};
  }
  if (sessions.contains(m.session)) return {RouteKind::kExisting, m.session};
  if (role == Role::kCommitter && m.kind == MessageKind::kFirstMsg) {
    return {RouteKind::kCreate, m.session};
  }
  return {RouteKind::kUnknownSession, m.session};
}

namespace {

[[noreturn]] void unknown_session(SessionId id) {
  fail(Errc::kUnknownSession, "no session " + std::to_string(id.value));
}

}  // namespace

// ---------------------------------------------------------------------------
// Receiver

SessionId ReceiverEndpoint::allocate_session(RandomSource& rng) {
  std::optional<Trapdoor> td;
  std::optional<CommitParams> params;
  if (mode_ == ReceiverMode::kTrapdoor) {
    auto [p, t] = setup_trapdoor(group_, rng);
    params = std::move(p);
    td = std::move(t);
  } else {
    Bytes seed(32);
    rng.fill(seed);
    params = setup_honest(group_, seed);
  }

  std::lock_guard lock(mu_);
  SessionId id{next_id_++};
  sessions_.emplace(id, SessionState{.id = id});
  pending_.emplace(id, std::move(*params));
  if (td) trapdoors_.emplace(id, std::move(*td));
  return id;
}

std::vector<ProtocolMessage> ReceiverEndpoint::send_first_message(SessionId id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) unknown_session(id);
  auto pending = pending_.find(id);
  StepResult result;
  if (pending != pending_.end()) {
    CommitParams params = std::move(pending->second);
    pending_.erase(pending);
    result = receiver_step(std::move(it->second), StartSession{std::move(params)});
  } else {
    // Already started: the state machine treats a second start as out of phase.
    std::optional<CommitParams> params = it->second.params;
    result = params ? receiver_step(std::move(it->second), StartSession{std::move(*params)})
                    : receiver_step(std::move(it->second), Malformed{Errc::kOutOfPhase});
  }
  it->second = std::move(result.state);
  return std::move(result.outgoing);
}

std::vector<ProtocolMessage> ReceiverEndpoint::start_session(RandomSource& rng) {
  return send_first_message(allocate_session(rng));
}

std::vector<ProtocolMessage> ReceiverEndpoint::on_message(const ProtocolMessage& m) {
  std::lock_guard lock(mu_);
  Route route = multiplex(sessions_, m, Role::kReceiver);
  if (route.kind != RouteKind::kExisting) unknown_session(m.session);
  auto& state = sessions_.at(route.session);
  auto result = receiver_step(std::move(state), Incoming{m});
  state = std::move(result.state);
  return std::move(result.outgoing);
}

std::vector<ProtocolMessage> ReceiverEndpoint::on_frame(ByteView frame) {
  try {
    return on_message(decode_message(frame, group_));
  } catch (const Error& e) {
    if (e.code() == Errc::kUnknownSession) throw;
    auto id = peek_session(frame);
    std::lock_guard lock(mu_);
    auto it = id ? sessions_.find(*id) : sessions_.end();
    if (it == sessions_.end()) throw;
    auto result = receiver_step(std::move(it->second), Malformed{e.code()});
    it->second = std::move(result.state);
    return std::move(result.outgoing);
  }
}

std::optional<Trapdoor> ReceiverEndpoint::trapdoor(SessionId id) const {
  std::lock_guard lock(mu_);
  auto it = trapdoors_.find(id);
  return it == trapdoors_.end() ? std::nullopt : std::optional<Trapdoor>(it->second);
}

std::optional<CommitParams> ReceiverEndpoint::commit_params(SessionId id) const {
  std::lock_guard lock(mu_);
  if (auto it = pending_.find(id); it != pending_.end()) return it->second;
  if (auto it = sessions_.find(id); it != sessions_.end()) return it->second.params;
  return std::nullopt;
}

SessionState ReceiverEndpoint::session(SessionId id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) unknown_session(id);
  return it->second;
}

SessionTable ReceiverEndpoint::sessions() const {
  std::lock_guard lock(mu_);
  return sessions_;
}

// ---------------------------------------------------------------------------
// Committer

std::optional<Group> CommitterEndpoint::group() const {
  std::lock_guard lock(mu_);
  return group_;
}

std::vector<ProtocolMessage> CommitterEndpoint::apply(SessionId id, const CommitterEvent& event) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) unknown_session(id);
  auto result = committer_step(std::move(it->second), event);
  it->second = std::move(result.state);
  return std::move(result.outgoing);
}

std::vector<ProtocolMessage> CommitterEndpoint::on_message(const ProtocolMessage& m) {
  std::lock_guard lock(mu_);
  Route route = multiplex(sessions_, m, Role::kCommitter);
  switch (route.kind) {
    case RouteKind::kConnection: {
      Group announced(params_payload(m));
      if (group_ && !(*group_ == announced)) {
        fail(Errc::kInvalidParams, "peer announced different group parameters");
      }
      group_ = std::move(announced);
      return {};
    }
    case RouteKind::kCreate:
      sessions_.emplace(route.session, SessionState{.id = route.session});
      [[fallthrough]];
    case RouteKind::kExisting:
      return apply(route.session, Incoming{m});
    case RouteKind::kUnknownSession:
      break;
  }
  unknown_session(m.session);
}

std::vector<ProtocolMessage> CommitterEndpoint::on_frame(ByteView frame) {
  std::optional<Group> group = this->group();
  try {
    return on_message(group ? decode_message(frame, *group) : decode_message(frame));
  } catch (const Error& e) {
    if (e.code() == Errc::kUnknownSession) throw;
    auto id = peek_session(frame);
    std::lock_guard lock(mu_);
    if (!id || !sessions_.contains(*id)) throw;
    return apply(*id, Malformed{e.code()});
  }
}

std::vector<ProtocolMessage> CommitterEndpoint::commit(SessionId id, const Scalar& x,
                                                       const Scalar& r) {
  std::lock_guard lock(mu_);
  return apply(id, CommitTo{x, r});
}

std::vector<ProtocolMessage> CommitterEndpoint::reveal(SessionId id,
                                                       std::optional<Opening> opening) {
  std::lock_guard lock(mu_);
  return apply(id, Reveal{std::move(opening)});
}

SessionState CommitterEndpoint::session(SessionId id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) unknown_session(id);
  return it->second;
}

SessionTable CommitterEndpoint::sessions() const {
  std::lock_guard lock(mu_);
  return sessions_;
}

}  // namespace eqcom
