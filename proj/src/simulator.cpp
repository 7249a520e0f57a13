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

#include "eqcom/simulator.hpp"

#include <deque>
#include <sstream>

#include "eqcom/error.hpp"

namespace eqcom {

Digest first_message_digest(const GroupElement& base) {
  return sha256({encode_element(base)});
}

AdversarialStrategy sum_of_digests() {
  return {"sum-of-digests", [](std::span<const Digest> digests, const ScalarField& field) {
            mpz_class sum = 0;
            for (const auto& d : digests) sum += from_bytes(d);
            return field.reduce(sum);
          }};
}

AdversarialStrategy hash_of_concatenation() {
  return {"hash-of-concatenation", [](std::span<const Digest> digests, const ScalarField& field) {
            Bytes cat;
            for (const auto& d : digests) cat.insert(cat.end(), d.begin(), d.end());
            return field.reduce(from_bytes(sha256({cat})));
          }};
}

std::string_view outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAccepted: return "Accepted";
    case Outcome::kRejected: return "Rejected";
    case Outcome::kFailed: return "Failed";
  }
  return "Unknown";
}

namespace {

std::size_t strategy_arity(const CommitterStrategy& strategy) {
  if (const auto* h = std::get_if<HonestStrategy>(&strategy)) return h->values.size();
  if (const auto* e = std::get_if<EquivocatorStrategy>(&strategy)) {
    if (e->initial.size() != e->revised.size()) {
      fail(Errc::kInvalidParams, "equivocator needs as many revised as initial values");
    }
    return e->initial.size();
  }
  return 0;  // adversarial works for any m
}

// All firsts (in their original relative order), then everything else.
Schedule defer_commits(const Schedule& schedule) {
  Schedule out{schedule.sessions, {}};
  for (const auto& s : schedule.steps) {
    if (s.action == Action::kDeliverFirstMsg) out.steps.push_back(s);
  }
  for (const auto& s : schedule.steps) {
    if (s.action != Action::kDeliverFirstMsg) out.steps.push_back(s);
  }
  return out;
}

class Runner {
 public:
  Runner(const CommitterStrategy& strategy, const RunOptions& options, std::size_t m)
      : strategy_(strategy),
        options_(options),
        receiver_(options.group, options.mode),
        committer_(options.group),
        reports_(m) {
    for (std::size_t i = 0; i < m; ++i) {
      committer_rng_.push_back(make_rng(i, Role::kCommitter));
      auto receiver_rng = make_rng(i, Role::kReceiver);
      ids_.push_back(receiver_.allocate_session(*receiver_rng));
      reports_[i].id = ids_[i];
    }
  }

  void execute(const ScheduleStep& step) {
    switch (step.action) {
      case Action::kDeliverFirstMsg:
        to_committer(receiver_.send_first_message(ids_[step.session]));
        break;
      case Action::kDeliverCommit:
        commit(step.session);
        break;
      case Action::kDeliverOpen:
        open(step.session);
        break;
    }
  }

  RunReport finish() {
    auto receiver_sessions = receiver_.sessions();
    for (std::size_t i = 0; i < reports_.size(); ++i) {
      auto& rep = reports_[i];
      const auto& rs = receiver_sessions.at(ids_[i]);
      if (rs.verdict == Verdict::kAccepted) {
        rep.outcome = Outcome::kAccepted;
        rep.opened_value = rs.opening->x;
      } else if (rs.verdict == Verdict::kRejected) {
        rep.outcome = Outcome::kRejected;
      }
      if (!rep.failure) rep.failure = rs.failure;
      if (auto td = receiver_.trapdoor(ids_[i])) rep.receiver_trapdoor = td->b;
    }
    return {std::move(reports_), std::move(transcript_), std::move(adversarial_)};
  }

 private:
  std::unique_ptr<RandomSource> make_rng(std::size_t i, Role role) {
    if (options_.randomness) return options_.randomness(i, role);
    auto label = role == Role::kReceiver ? "receiver" : "committer";
    return std::make_unique<HashDrbg>(
        derive_seed(options_.seed, label, static_cast<std::uint32_t>(i)));
  }

  // Ping-pongs until neither side has anything left to say.
  void to_committer(std::vector<ProtocolMessage> msgs) { pump(std::move(msgs), true); }
  void to_receiver(std::vector<ProtocolMessage> msgs) { pump(std::move(msgs), false); }

  void pump(std::vector<ProtocolMessage> msgs, bool towards_committer) {
    std::deque<std::pair<ProtocolMessage, bool>> queue;
    for (auto& m : msgs) queue.emplace_back(std::move(m), towards_committer);
    while (!queue.empty()) {
      auto [m, to_committer] = std::move(queue.front());
      queue.pop_front();
      Bytes frame = encode_message(m);
      if (to_committer) {
        transcript_.append(Direction::kReceived, m);
        for (auto& r : committer_.on_frame(frame)) queue.emplace_back(std::move(r), false);
      } else {
        std::uint64_t step = transcript_.append(Direction::kSent, m);
        if (m.kind == MessageKind::kCommit) reports_[index_of(m.session)].commit_step = step;
        for (auto& r : receiver_.on_frame(frame)) queue.emplace_back(std::move(r), true);
      }
    }
  }

  std::size_t index_of(SessionId id) const { return id.value - 1; }

  // Committer-side local failure for a session the committer never saw.
  bool committer_knows(std::size_t i) {
    if (committer_.sessions().contains(ids_[i])) return true;
    if (!reports_[i].failure) reports_[i].failure = Errc::kOutOfPhase;
    return false;
  }

  void commit(std::size_t i) {
    if (!committer_knows(i)) return;
    auto& rng = *committer_rng_[i];
    const auto& field = options_.group.field();
    std::optional<Scalar> x;
    if (const auto* h = std::get_if<HonestStrategy>(&strategy_)) {
      x = h->values[i];
    } else if (const auto* e = std::get_if<EquivocatorStrategy>(&strategy_)) {
      x = e->initial[i];
    } else {
      const auto& adv = std::get<AdversarialStrategy>(strategy_);
      if (i == 0) {
        std::vector<Digest> digests;
        auto sessions = committer_.sessions();
        for (auto id : ids_) {
          auto it = sessions.find(id);
          if (it != sessions.end() && it->second.params) {
            digests.push_back(first_message_digest(it->second.params->base));
          }
        }
        x = adv.f(digests, field);
        adversarial_ = AdversarialLog{adv.name, std::move(digests), *x};
      } else {
        x = random_scalar(field, rng);
      }
    }
    Scalar r = random_scalar(field, rng);
    auto msgs = committer_.commit(ids_[i], *x, r);
    auto state = committer_.session(ids_[i]);
    if (state.phase == Phase::kCommitted) reports_[i].committed = state.opening;
    to_receiver(std::move(msgs));
  }

  void open(std::size_t i) {
    if (!committer_knows(i)) return;
    std::optional<Opening> override;
    if (const auto* e = std::get_if<EquivocatorStrategy>(&strategy_)) {
      auto state = committer_.session(ids_[i]);
      if (state.phase == Phase::kCommitted) {
        // The revised value is fixed here, after the commitment went out.
        reports_[i].value_fixed_step = transcript_.next_step();
        override = equivocate(*receiver_.trapdoor(ids_[i]), *state.opening, e->revised[i]);
      }
    }
    auto msgs = committer_.reveal(ids_[i], override);
    auto state = committer_.session(ids_[i]);
    if (state.phase == Phase::kOpened) {
      reports_[i].revealed = state.opening;
      if (!reports_[i].value_fixed_step) {
        reports_[i].value_fixed_step = reports_[i].commit_step;
      }
    }
    to_receiver(std::move(msgs));
  }

  const CommitterStrategy& strategy_;
  const RunOptions& options_;
  ReceiverEndpoint receiver_;
  CommitterEndpoint committer_;
  std::vector<SessionId> ids_;
  std::vector<std::unique_ptr<RandomSource>> committer_rng_;
  std::vector<SessionReport> reports_;
  Transcript transcript_;
  std::optional<AdversarialLog> adversarial_;
};

}  // namespace

RunReport run(const Schedule& schedule, const CommitterStrategy& strategy,
              const RunOptions& options) {
  check_indices(schedule);
  std::size_t m = schedule.sessions;
  if (!std::holds_alternative<AdversarialStrategy>(strategy) && strategy_arity(strategy) != m) {
    fail(Errc::kInvalidParams, "strategy arity does not match session count");
  }
  if (std::holds_alternative<EquivocatorStrategy>(strategy) &&
      options.mode != ReceiverMode::kTrapdoor) {
    fail(Errc::kInvalidParams, "equivocation needs a trapdoor-mode receiver");
  }

  const Schedule& order = std::holds_alternative<AdversarialStrategy>(strategy)
                              ? defer_commits(schedule)
                              : schedule;
  Runner runner(strategy, options, m);
  for (const auto& step : order.steps) runner.execute(step);
  return runner.finish();
}

RunReport straight_line_simulate(const Schedule& schedule, std::vector<Scalar> revised,
                                 RunOptions options) {
  options.mode = ReceiverMode::kTrapdoor;
  std::vector<Scalar> zeros(revised.size(), options.group.field().zero());
  return run(schedule, EquivocatorStrategy{std::move(zeros), std::move(revised)}, options);
}

std::string format_report(const RunReport& report) {
  std::ostringstream out;
  out << "# eqcom run report\n";
  for (const auto& s : report.sessions) {
    out << "# session " << s.id.value << ' ' << outcome_name(s.outcome);
    if (s.opened_value) out << " value=" << to_hex(encode_scalar(*s.opened_value));
    if (s.commit_step) out << " commit_step=" << *s.commit_step;
    if (s.value_fixed_step) out << " value_fixed_step=" << *s.value_fixed_step;
    if (s.failure && s.outcome != Outcome::kAccepted) out << " failure=" << errc_name(*s.failure);
    out << '\n';
  }
  if (report.adversarial) {
    const auto& adv = *report.adversarial;
    out << "# adversarial function=" << adv.function << '\n';
    for (std::size_t i = 0; i < adv.digests.size(); ++i) {
      out << "# adversarial digest " << i + 1 << ' ' << to_hex(adv.digests[i]) << '\n';
    }
    out << "# adversarial output " << to_hex(encode_scalar(adv.output)) << '\n';
  }
  for (const auto& e : report.transcript.entries()) {
    Bytes frame = encode_message(e.message);
    ByteView payload = ByteView(frame).subspan(kFrameHeaderSize);
    out << e.step << ' ' << e.message.session.value << ' '
        << (e.direction == Direction::kSent ? "sent" : "received") << ' '
        << kind_name(e.message.kind) << ' ' << (payload.empty() ? "-" : to_hex(payload)) << '\n';
  }
  return out.str();
}

}  // namespace eqcom
