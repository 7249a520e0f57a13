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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eqcom/endpoint.hpp"
#include "eqcom/schedule.hpp"
#include "eqcom/transcript.hpp"

// Deterministic concurrent-session scheduler. One receiver and one committer
// run `m` sessions in the order a Schedule dictates; every message goes
// through the wire codec and is logged once, from the committer's side.
//
// The adversarial strategy reproduces the scheduling scenario for
// knowledge-assumption extractors with correlated auxiliary input: the
// committer first collects every session's random first message, then
// commits in session 1 to f(B_1, ..., B_m). The simulator only materialises
// and logs that correlation; it does not model any extractor.

namespace eqcom {

/// Commits to values[i] in session i.
struct HonestStrategy {
  std::vector<Scalar> values;
};

/// Commits to initial[i], then opens to revised[i] with the receiver's
/// per-session trapdoor. Needs a trapdoor-mode receiver.
struct EquivocatorStrategy {
  std::vector<Scalar> initial;
  std::vector<Scalar> revised;
};

/// Maps the digests of all first messages (session order) to a value in Z_q.
using DigestFunction = std::function<Scalar(std::span<const Digest>, const ScalarField&)>;

/// Defers every commit until all first messages are in, commits session 1 to
/// f(digests), and completes the remaining sessions honestly with fresh
/// random values.
struct AdversarialStrategy {
  std::string name;
  DigestFunction f;
};

using CommitterStrategy = std::variant<HonestStrategy, EquivocatorStrategy, AdversarialStrategy>;

/// SHA-256 of encode_element(B).
Digest first_message_digest(const GroupElement& base);

/// f = (sum of digests, read as big-endian integers) mod q.
AdversarialStrategy sum_of_digests();
/// f = SHA-256(d_1 || ... || d_m) mod q.
AdversarialStrategy hash_of_concatenation();

/// Per-session randomness. The default fans the master seed out with
/// derive_seed(seed, "receiver"|"committer", index).
using RandomnessFactory = std::function<std::unique_ptr<RandomSource>(std::size_t, Role)>;

struct RunOptions {
  Group group;
  ReceiverMode mode = ReceiverMode::kHonest;
  Bytes seed;
  RandomnessFactory randomness;  // overrides the seed fan-out when set
};

enum class Outcome { kAccepted, kRejected, kFailed };
std::string_view outcome_name(Outcome outcome);

struct SessionReport {
  SessionId id;
  Outcome outcome = Outcome::kFailed;
  std::optional<Scalar> opened_value;      // accepted x
  std::optional<Opening> committed;        // opening behind the COMMIT
  std::optional<Opening> revealed;         // opening actually sent
  std::optional<std::uint64_t> commit_step;
  std::optional<std::uint64_t> value_fixed_step;  // when the opened value was chosen
  std::optional<Scalar> receiver_trapdoor;        // trapdoor mode only
  std::optional<Errc> failure;
};

struct AdversarialLog {
  std::string function;
  std::vector<Digest> digests;  // session order
  Scalar output;
};

struct RunReport {
  std::vector<SessionReport> sessions;
  Transcript transcript;
  std::optional<AdversarialLog> adversarial;
};

/// Executes `schedule` step by step. Deterministic for fixed options.
/// Out-of-order steps fail the affected session instead of throwing; only
/// out-of-range indices, arity mismatches, or an equivocator without a
/// trapdoor receiver throw.
RunReport run(const Schedule& schedule, const CommitterStrategy& strategy,
              const RunOptions& options);

/// Trapdoor receiver plus equivocator that commits to 0 everywhere and opens
/// session i to revised[i]. No rewinding: every message is produced once.
RunReport straight_line_simulate(const Schedule& schedule, std::vector<Scalar> revised,
                                 RunOptions options);

/// Structured text: '#'-prefixed summary lines, then one transcript record
/// per line as "step session direction kind payload_hex" ('-' if empty).
std::string format_report(const RunReport& report);

}  // namespace eqcom
