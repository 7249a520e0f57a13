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

#include "eqcom/session.hpp"

namespace eqcom {

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kInit: return "Init";
    case Phase::kAwaitCommit: return "AwaitCommit";
    case Phase::kCommitted: return "Committed";
    case Phase::kOpened: return "Opened";
    case Phase::kFailed: return "Failed";
  }
  return "Unknown";
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPending: return "Pending";
    case Verdict::kAccepted: return "Accepted";
    case Verdict::kRejected: return "Rejected";
  }
  return "Unknown";
}

namespace {

// `notify` is false when the trigger was itself a REJECT.
StepResult fail_session(SessionState state, Errc why, bool notify = true) {
  if (state.phase == Phase::kFailed) return {std::move(state), {}};
  state.phase = Phase::kFailed;
  state.failure = why;
  StepResult out{std::move(state), {}};
  if (notify) out.outgoing.push_back(reject_message(out.state.id));
  return out;
}

bool is_reject(const Incoming& in) { return in.message.kind == MessageKind::kReject; }

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

StepResult receiver_step(SessionState state, const ReceiverEvent& event) {
  if (state.phase == Phase::kFailed) return {std::move(state), {}};
  return std::visit(
      Overloaded{
          [&](const StartSession& start) -> StepResult {
            if (state.phase != Phase::kInit) return fail_session(std::move(state), Errc::kOutOfPhase);
            state.params = start.params;
            state.phase = Phase::kAwaitCommit;
            auto msg = first_message(state.id, start.params.base);
            return {std::move(state), {std::move(msg)}};
          },
          [&](const Incoming& in) -> StepResult {
            const auto& m = in.message;
            if (m.session != state.id) return fail_session(std::move(state), Errc::kUnknownSession);
            if (state.phase == Phase::kAwaitCommit && m.kind == MessageKind::kCommit) {
              state.commitment = Commitment{element_payload(m)};
              state.phase = Phase::kCommitted;
              return {std::move(state), {}};
            }
            if (state.phase == Phase::kCommitted && m.kind == MessageKind::kOpen) {
              const Opening& o = opening_payload(m);
              if (!verify(*state.params, *state.commitment, o)) {
                state.verdict = Verdict::kRejected;
                return fail_session(std::move(state), Errc::kBadOpening);
              }
              state.opening = o;
              state.phase = Phase::kOpened;
              state.verdict = Verdict::kAccepted;
              auto msg = accept_message(state.id);
              return {std::move(state), {std::move(msg)}};
            }
            return fail_session(std::move(state), Errc::kOutOfPhase, !is_reject(in));
          },
          [&](const Malformed& bad) -> StepResult {
            return fail_session(std::move(state), bad.error);
          },
      },
      event);
}

StepResult committer_step(SessionState state, const CommitterEvent& event) {
  if (state.phase == Phase::kFailed) return {std::move(state), {}};
  return std::visit(
      Overloaded{
          [&](const Incoming& in) -> StepResult {
            const auto& m = in.message;
            if (m.session != state.id) return fail_session(std::move(state), Errc::kUnknownSession);
            if (state.phase == Phase::kInit && m.kind == MessageKind::kFirstMsg) {
              const GroupElement& base = element_payload(m);
              if (base.is_identity()) return fail_session(std::move(state), Errc::kInvalidParams);
              state.params = make_commit_params(base.group(), base);
              state.phase = Phase::kAwaitCommit;
              return {std::move(state), {}};
            }
            if (state.phase == Phase::kOpened && state.verdict == Verdict::kPending) {
              if (m.kind == MessageKind::kAccept) {
                state.verdict = Verdict::kAccepted;
                return {std::move(state), {}};
              }
              if (m.kind == MessageKind::kReject) {
                state.verdict = Verdict::kRejected;
                return fail_session(std::move(state), Errc::kRejectedByPeer, false);
              }
            }
            return fail_session(std::move(state), Errc::kOutOfPhase, !is_reject(in));
          },
          [&](const CommitTo& cmd) -> StepResult {
            if (state.phase != Phase::kAwaitCommit) return fail_session(std::move(state), Errc::kOutOfPhase);
            state.commitment = commit_with_randomness(*state.params, cmd.x, cmd.r);
            state.opening = Opening{cmd.x, cmd.r};
            state.phase = Phase::kCommitted;
            auto msg = commit_message(state.id, *state.commitment);
            return {std::move(state), {std::move(msg)}};
          },
          [&](const Reveal& cmd) -> StepResult {
            if (state.phase != Phase::kCommitted) return fail_session(std::move(state), Errc::kOutOfPhase);
            Opening o = cmd.opening.value_or(*state.opening);
            state.opening = o;
            state.phase = Phase::kOpened;
            auto msg = open_message(state.id, o);
            return {std::move(state), {std::move(msg)}};
          },
          [&](const Malformed& bad) -> StepResult {
            return fail_session(std::move(state), bad.error);
          },
      },
      event);
}

}  // namespace eqcom
