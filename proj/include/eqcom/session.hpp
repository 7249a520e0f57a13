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
#include <string_view>
#include <variant>
#include <vector>

#include "eqcom/error.hpp"
#include "eqcom/message.hpp"

// Pure per-session transition functions for the two protocol roles.
//
//   receiver                         committer
//   Init --start--> AwaitCommit      Init --FIRST_MSG--> AwaitCommit
//        FIRST_MSG(B) ----------->
//   AwaitCommit --COMMIT--> Committed  <--commit-- AwaitCommit -> Committed
//   Committed --OPEN--> Opened          <--reveal-- Committed -> Opened
//        ACCEPT | REJECT --------->   Opened --ACCEPT--> Opened (accepted)
//
// Any out-of-phase event moves the session to Failed and emits one REJECT
// (never in answer to a REJECT). Failed is terminal.

namespace eqcom {

enum class Phase { kInit, kAwaitCommit, kCommitted, kOpened, kFailed };
enum class Verdict { kPending, kAccepted, kRejected };

std::string_view phase_name(Phase phase);
std::string_view verdict_name(Verdict verdict);

struct SessionState {
  SessionId id;
  Phase phase = Phase::kInit;
  std::optional<CommitParams> params{};
  std::optional<Commitment> commitment{};
  /// Committer: the opening it holds. Receiver: the opening it accepted.
  std::optional<Opening> opening{};
  Verdict verdict = Verdict::kPending;
  std::optional<Errc> failure{};
};

struct StartSession {
  CommitParams params;
};
struct Incoming {
  ProtocolMessage message;
};
struct CommitTo {
  Scalar x;
  Scalar r;
};
/// Reveals the stored opening, or `opening` instead when set (equivocation).
struct Reveal {
  std::optional<Opening> opening;
};
/// A frame for this session could not be decoded.
struct Malformed {
  Errc error;
};

using ReceiverEvent = std::variant<StartSession, Incoming, Malformed>;
using CommitterEvent = std::variant<Incoming, CommitTo, Reveal, Malformed>;

struct StepResult {
  SessionState state;
  std::vector<ProtocolMessage> outgoing;
};

StepResult receiver_step(SessionState state, const ReceiverEvent& event);
StepResult committer_step(SessionState state, const CommitterEvent& event);

}  // namespace eqcom
