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

#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <algorithm>
#include <set>

#include "eqcom/error.hpp"
#include "test_util.hpp"

namespace eqcom {
namespace {

using testing::group_256;
using testing::toy_group;

RunOptions options(const Group& g, ReceiverMode mode, std::string_view seed) {
  return RunOptions{g, mode, Bytes(seed.begin(), seed.end()), {}};
}

std::vector<Scalar> scalars(const Group& g, std::initializer_list<long> vs) {
  std::vector<Scalar> out;
  for (long v : vs) out.push_back(g.field().reduce(v));
  return out;
}

// Recomputes each FIRST_MSG digest straight from the logged payload bytes.
std::vector<Bytes> raw_digests_from_transcript(const Transcript& t) {
  std::vector<Bytes> out;
  for (const auto& e : t.entries()) {
    if (e.message.kind != MessageKind::kFirstMsg) continue;
    Bytes frame = encode_message(e.message);
    Bytes md(SHA256_DIGEST_LENGTH);
    SHA256(frame.data() + kFrameHeaderSize, frame.size() - kFrameHeaderSize, md.data());
    out.push_back(md);
  }
  return out;
}

mpz_class to_mpz(const Bytes& b) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

std::vector<mpz_class> digests_from_transcript(const Transcript& t) {
  std::vector<mpz_class> out;
  for (const auto& d : raw_digests_from_transcript(t)) out.push_back(to_mpz(d));
  return out;
}

TEST(Schedules, EnumerationCounts) {
  EXPECT_EQ(enumerate_schedules(1).size(), 1u);
  // Oracle: positions of session 0's three actions among six slots, C(6,3),
  // counted by brute force over bitmasks.
  std::size_t c63 = 0;
  for (unsigned mask = 0; mask < 64; ++mask) c63 += __builtin_popcount(mask) == 3;
  auto two = enumerate_schedules(2);
  EXPECT_EQ(two.size(), c63);
  EXPECT_EQ(two.size(), 20u);
  EXPECT_EQ(enumerate_schedules(3).size(), 1680u);  // 9! / 6^3
  std::set<std::string> distinct;
  for (const auto& s : two) {
    EXPECT_TRUE(is_valid(s));
    distinct.insert(format_schedule(s));
  }
  EXPECT_EQ(distinct.size(), 20u);
  for (const auto& s : enumerate_schedules(3)) ASSERT_TRUE(is_valid(s));
}

TEST(Schedules, EnumerationGuards) {
  EXPECT_THROW(enumerate_schedules(4), Error);
  try {
    enumerate_schedules(2, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEnumerationTooLarge);
  }
}

TEST(Schedules, Validity) {
  EXPECT_TRUE(is_valid(sequential_schedule(3)));
  EXPECT_TRUE(is_valid(round_robin_schedule(3)));
  Schedule out_of_order{1, {{0, Action::kDeliverCommit}, {0, Action::kDeliverFirstMsg},
                            {0, Action::kDeliverOpen}}};
  EXPECT_FALSE(is_valid(out_of_order));
  Schedule incomplete{1, {{0, Action::kDeliverFirstMsg}}};
  EXPECT_FALSE(is_valid(incomplete));
  Schedule bad_index{1, {{1, Action::kDeliverFirstMsg}}};
  EXPECT_FALSE(is_valid(bad_index));
  EXPECT_THROW(check_indices(bad_index), Error);
}

TEST(Schedules, TextFormat) {
  auto text = "# two sessions\n0:first_msg\n1:first_msg\n\n0:commit  # trailing\n1:commit\n0:open\n1:open\n";
  auto s = parse_schedule(text);
  EXPECT_EQ(s.sessions, 2u);
  EXPECT_EQ(s, round_robin_schedule(2));
  EXPECT_EQ(parse_schedule(format_schedule(s)), s);
  EXPECT_EQ(parse_schedule("0:first_msg\n", 3).sessions, 3u);
  EXPECT_THROW(parse_schedule("0:wave\n"), Error);
  EXPECT_THROW(parse_schedule("x:open\n"), Error);
  EXPECT_THROW(parse_schedule("0 open\n"), Error);
  EXPECT_THROW(parse_schedule("4:open\n", 2), Error);
}

TEST(Run, HonestSingleSessionMatchesProtocolExample) {
  auto g = toy_group();
  auto opts = options(g, ReceiverMode::kTrapdoor, "unused");
  opts.randomness = [](std::size_t, Role role) -> std::unique_ptr<RandomSource> {
    // Receiver draws b = 3 (B = 8); committer draws r = 7.
    return std::make_unique<ScriptedSource>(Bytes{role == Role::kReceiver ? std::uint8_t{3}
                                                                          : std::uint8_t{7}});
  };
  auto report = run(sequential_schedule(1), HonestStrategy{scalars(g, {5})}, opts);
  ASSERT_EQ(report.sessions.size(), 1u);
  EXPECT_EQ(report.sessions[0].outcome, Outcome::kAccepted);
  EXPECT_EQ(report.sessions[0].opened_value, g.field().reduce(5));

  const SessionId id{1};
  Transcript expected;
  expected.append(Direction::kReceived, first_message(id, g.element(8)));
  expected.append(Direction::kSent, commit_message(id, {g.element(16)}));
  expected.append(Direction::kSent, open_message(id, {g.field().reduce(5), g.field().reduce(7)}));
  expected.append(Direction::kReceived, accept_message(id));
  EXPECT_EQ(report.transcript, expected);
  EXPECT_EQ(encode_eqct(report.transcript), encode_eqct(expected));
}

TEST(Run, EquivocatorOpensToRevisedValues) {
  const auto& g = group_256();
  auto revised = scalars(g, {42, 7, 1234567});
  auto report = run(round_robin_schedule(3),
                    EquivocatorStrategy{scalars(g, {0, 0, 0}), revised},
                    options(g, ReceiverMode::kTrapdoor, "equiv"));
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = report.sessions[i];
    EXPECT_EQ(s.outcome, Outcome::kAccepted);
    EXPECT_EQ(s.opened_value, revised[i]);
    ASSERT_TRUE(s.committed && s.revealed);
    EXPECT_TRUE(s.committed->x.is_zero());
    // The COMMIT that went out before the revision opens to the revised value.
    auto logged = std::find_if(report.transcript.entries().begin(),
                               report.transcript.entries().end(), [&](const auto& e) {
                                 return e.message.session == s.id &&
                                        e.message.kind == MessageKind::kCommit;
                               });
    ASSERT_NE(logged, report.transcript.entries().end());
    auto [params, td] = setup_trapdoor(g, *s.receiver_trapdoor);
    EXPECT_TRUE(verify(params, Commitment{element_payload(logged->message)}, *s.revealed));
    EXPECT_LT(*s.commit_step, *s.value_fixed_step);
  }
}

TEST(Run, EquivocatorNeedsTrapdoorReceiver) {
  auto g = toy_group();
  EXPECT_THROW(run(sequential_schedule(1),
                   EquivocatorStrategy{scalars(g, {0}), scalars(g, {1})},
                   options(g, ReceiverMode::kHonest, "x")),
               Error);
  EXPECT_THROW(run(sequential_schedule(2), HonestStrategy{scalars(g, {1})},
                   options(g, ReceiverMode::kHonest, "x")),
               Error);
}

TEST(Run, AdversarialSumOfDigests) {
  const auto& g = group_256();
  auto report = run(sequential_schedule(2), sum_of_digests(),
                    options(g, ReceiverMode::kHonest, "adv"));
  auto digests = digests_from_transcript(report.transcript);
  ASSERT_EQ(digests.size(), 2u);
  mpz_class expected = (digests[0] + digests[1]) % g.order();
  ASSERT_EQ(report.sessions[0].outcome, Outcome::kAccepted);
  EXPECT_EQ(report.sessions[0].opened_value->value(), expected);
  ASSERT_TRUE(report.adversarial);
  EXPECT_EQ(report.adversarial->output.value(), expected);
  EXPECT_EQ(report.sessions[1].outcome, Outcome::kAccepted);

  // Both first messages precede the first commit even though the input
  // schedule was sequential.
  const auto& entries = report.transcript.entries();
  EXPECT_EQ(entries[0].message.kind, MessageKind::kFirstMsg);
  EXPECT_EQ(entries[1].message.kind, MessageKind::kFirstMsg);
  EXPECT_EQ(entries[2].message.kind, MessageKind::kCommit);
  EXPECT_EQ(entries[2].message.session, SessionId{1});
}

TEST(Run, AdversarialHashOfConcatenation) {
  const auto& g = group_256();
  auto report = run(round_robin_schedule(3), hash_of_concatenation(),
                    options(g, ReceiverMode::kHonest, "adv3"));
  Bytes cat;
  for (const auto& d : raw_digests_from_transcript(report.transcript)) {
    cat.insert(cat.end(), d.begin(), d.end());
  }
  ASSERT_EQ(cat.size(), 3u * SHA256_DIGEST_LENGTH);
  Bytes md(SHA256_DIGEST_LENGTH);
  SHA256(cat.data(), cat.size(), md.data());
  mpz_class h = to_mpz(md);
  EXPECT_EQ(report.sessions[0].opened_value->value(), h % g.order());
}

TEST(Run, ProtocolOrderViolationsFailSessions) {
  auto g = toy_group();
  Schedule s{2,
             {{0, Action::kDeliverFirstMsg}, {0, Action::kDeliverOpen},  // open before commit
              {1, Action::kDeliverCommit},                               // commit before first
              {1, Action::kDeliverFirstMsg}, {1, Action::kDeliverCommit},
              {1, Action::kDeliverOpen}, {1, Action::kDeliverOpen},      // duplicate open
              {0, Action::kDeliverCommit}}};
  auto report = run(s, HonestStrategy{scalars(g, {1, 2})}, options(g, ReceiverMode::kHonest, "v"));
  EXPECT_EQ(report.sessions[0].outcome, Outcome::kFailed);
  EXPECT_EQ(report.sessions[1].outcome, Outcome::kAccepted);
  EXPECT_EQ(report.sessions[1].failure, Errc::kOutOfPhase);

  Schedule twice{1, {{0, Action::kDeliverFirstMsg}, {0, Action::kDeliverFirstMsg},
                     {0, Action::kDeliverCommit}, {0, Action::kDeliverOpen}}};
  auto r2 = run(twice, HonestStrategy{scalars(g, {1})}, options(g, ReceiverMode::kHonest, "v"));
  EXPECT_EQ(r2.sessions[0].outcome, Outcome::kFailed);

  Schedule bad{1, {{3, Action::kDeliverFirstMsg}}};
  EXPECT_THROW(run(bad, HonestStrategy{scalars(g, {1})}, options(g, ReceiverMode::kHonest, "v")),
               Error);
}

TEST(Run, EveryTwoSessionInterleavingToy) {
  auto g = toy_group();
  auto seq_honest = run(sequential_schedule(2), HonestStrategy{scalars(g, {3, 9})},
                        options(g, ReceiverMode::kHonest, "all"));
  auto seq_equiv = run(sequential_schedule(2),
                       EquivocatorStrategy{scalars(g, {0, 0}), scalars(g, {6, 10})},
                       options(g, ReceiverMode::kTrapdoor, "all"));
  for (const auto& schedule : enumerate_schedules(2)) {
    auto honest = run(schedule, HonestStrategy{scalars(g, {3, 9})},
                      options(g, ReceiverMode::kHonest, "all"));
    auto equiv = run(schedule, EquivocatorStrategy{scalars(g, {0, 0}), scalars(g, {6, 10})},
                     options(g, ReceiverMode::kTrapdoor, "all"));
    for (std::size_t i = 0; i < 2; ++i) {
      SessionId id{static_cast<std::uint32_t>(i + 1)};
      EXPECT_EQ(honest.sessions[i].outcome, Outcome::kAccepted);
      EXPECT_EQ(equiv.sessions[i].outcome, Outcome::kAccepted);
      EXPECT_EQ(equiv.sessions[i].opened_value, scalars(g, {6, 10})[i]);
      EXPECT_EQ(encode_eqct(honest.transcript.for_session(id)),
                encode_eqct(seq_honest.transcript.for_session(id)));
      EXPECT_EQ(encode_eqct(equiv.transcript.for_session(id)),
                encode_eqct(seq_equiv.transcript.for_session(id)));
    }
  }
}

TEST(StraightLine, FiveSessions) {
  const auto& g = group_256();
  HashDrbg rng("revised");
  std::vector<Scalar> revised;
  for (int i = 0; i < 5; ++i) revised.push_back(random_scalar(g.field(), rng));
  auto opts = options(g, ReceiverMode::kHonest, "sls");
  auto schedule = round_robin_schedule(5);
  auto report = straight_line_simulate(schedule, revised, opts);

  std::set<std::pair<std::uint32_t, MessageKind>> seen;
  for (const auto& e : report.transcript.entries()) {
    EXPECT_TRUE(seen.emplace(e.message.session.value, e.message.kind).second)
        << "message produced twice";
  }
  EXPECT_EQ(report.transcript.size(), 20u);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& s = report.sessions[i];
    EXPECT_EQ(s.outcome, Outcome::kAccepted);
    EXPECT_EQ(s.opened_value, revised[i]);
    EXPECT_EQ(report.transcript.for_session(s.id).size(), 4u);
    EXPECT_LT(*s.commit_step, *s.value_fixed_step);
    if (!(s.committed->x == s.revealed->x)) {
      EXPECT_EQ(extract(*s.committed, *s.revealed), *s.receiver_trapdoor);
    }
  }
  std::vector<Scalar> values(revised);
  auto honest = run(schedule, HonestStrategy{values}, opts);
  EXPECT_EQ(honest.transcript.size(), report.transcript.size());
}

TEST(Report, DeterministicAndParseable) {
  const auto& g = group_256();
  auto a = run(round_robin_schedule(2), sum_of_digests(), options(g, ReceiverMode::kHonest, "r"));
  auto b = run(round_robin_schedule(2), sum_of_digests(), options(g, ReceiverMode::kHonest, "r"));
  auto c = run(round_robin_schedule(2), sum_of_digests(), options(g, ReceiverMode::kHonest, "s"));
  auto text = format_report(a);
  EXPECT_EQ(text, format_report(b));
  EXPECT_NE(text, format_report(c));
  EXPECT_NE(text.find("# session 1 Accepted"), std::string::npos);
  EXPECT_NE(text.find("# adversarial output "), std::string::npos);
  EXPECT_NE(text.find("received ACCEPT -"), std::string::npos);
  std::size_t records = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string step, session, dir, kind, payload, extra;
    fields >> step >> session >> dir >> kind >> payload;
    EXPECT_FALSE(payload.empty()) << line;
    EXPECT_FALSE(fields >> extra) << line;
    ++records;
  }
  EXPECT_EQ(records, a.transcript.size());
}

}  // namespace
}  // namespace eqcom
