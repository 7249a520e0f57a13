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

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "eqcom/session.hpp"

namespace eqcom {

using SessionTable = std::map<SessionId, SessionState>;

enum class Role { kReceiver, kCommitter };

enum class RouteKind {
  kConnection,      // session 0: connection-level PARAMS
  kExisting,        // dispatch to the named session
  kCreate,          // committer side, FIRST_MSG for a new session id
  kUnknownSession,  // error
};

struct Route {
  RouteKind kind;
  SessionId session;
};

/// Where `m` goes. Only the committer creates sessions from the wire; the
/// receiver assigns ids itself when it starts a session.
Route multiplex(const SessionTable& sessions, const ProtocolMessage& m, Role role);

/// How the receiver picks each session's base B.
enum class ReceiverMode {
  kHonest,    // hash-to-group over a fresh public seed; dlog unknown
  kTrapdoor,  // B = g^b with b kept by the receiver (simulator's hook)
};

/// Receiver side of a multiplexed connection. Thread-safe: one lock guards
/// the session table.
class ReceiverEndpoint {
 public:
  ReceiverEndpoint(Group group, ReceiverMode mode) : group_(std::move(group)), mode_(mode) {}

  const Group& group() const { return group_; }
  ReceiverMode mode() const { return mode_; }

  /// Registers the next session id (1, 2, ...) and samples its B from `rng`.
  /// Nothing is sent until send_first_message.
  SessionId allocate_session(RandomSource& rng);
  std::vector<ProtocolMessage> send_first_message(SessionId id);
  /// allocate_session followed by send_first_message.
  std::vector<ProtocolMessage> start_session(RandomSource& rng);

  /// Throws Error(kUnknownSession) for messages that route nowhere.
  std::vector<ProtocolMessage> on_message(const ProtocolMessage& m);
  /// Decodes and dispatches a frame. A malformed frame fails the session it
  /// names (when that session exists) and yields its REJECT.
  std::vector<ProtocolMessage> on_frame(ByteView frame);

  std::optional<Trapdoor> trapdoor(SessionId id) const;
  std::optional<CommitParams> commit_params(SessionId id) const;
  SessionState session(SessionId id) const;
  SessionTable sessions() const;

 private:
  Group group_;
  ReceiverMode mode_;
  mutable std::mutex mu_;
  SessionTable sessions_;
  std::map<SessionId, CommitParams> pending_;
  std::map<SessionId, Trapdoor> trapdoors_;
  std::uint32_t next_id_ = 1;
};

/// Committer side. The group is either fixed up front or learned from the
/// connection's PARAMS message.
class CommitterEndpoint {
 public:
  explicit CommitterEndpoint(std::optional<Group> group = std::nullopt)
      : group_(std::move(group)) {}

  std::optional<Group> group() const;

  std::vector<ProtocolMessage> on_message(const ProtocolMessage& m);
  std::vector<ProtocolMessage> on_frame(ByteView frame);

  std::vector<ProtocolMessage> commit(SessionId id, const Scalar& x, const Scalar& r);
  std::vector<ProtocolMessage> reveal(SessionId id, std::optional<Opening> opening = std::nullopt);

  SessionState session(SessionId id) const;
  SessionTable sessions() const;

 private:
  std::vector<ProtocolMessage> apply(SessionId id, const CommitterEvent& event);

  mutable std::mutex mu_;
  std::optional<Group> group_;
  SessionTable sessions_;
};

}  // namespace eqcom
