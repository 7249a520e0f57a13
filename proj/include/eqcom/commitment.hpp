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

#include <utility>
#include <vector>

#include "eqcom/group.hpp"

// Discrete-log equivocal commitments: Z = g^x * B^r over a prime-order group.
//
// Hiding is perfect. Binding holds only while dlog_g(B) is unknown; whoever
// knows it (the trapdoor b) can open any Z to any value, and anyone holding
// two openings of one Z with different values can compute b.

namespace eqcom {

/// Public commitment key. `base` is B, never the identity.
struct CommitParams {
  Group group;
  GroupElement base;
};

/// b = dlog_g(B), nonzero.
struct Trapdoor {
  Scalar b;
};

struct Commitment {
  GroupElement value;

  friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct Opening {
  Scalar x;  // committed value
  Scalar r;  // randomness

  friend bool operator==(const Opening&, const Opening&) = default;
};

/// Checks that `base` belongs to `group` and is not the identity.
CommitParams make_commit_params(const Group& group, const GroupElement& base);

/// b uniform in Z_q \ {0}, B = g^b.
std::pair<CommitParams, Trapdoor> setup_trapdoor(const Group& group, RandomSource& rng);
/// Deterministic variant with a caller-chosen nonzero b.
std::pair<CommitParams, Trapdoor> setup_trapdoor(const Group& group, const Scalar& b);

/// B from hash-to-group over `public_seed`, so nobody learns dlog_g(B).
CommitParams setup_honest(const Group& group, ByteView public_seed);

/// SHA-256 expansion of (seed, counter) reduced mod p, then raised to the
/// cofactor (p-1)/q; retries while the result is not a nontrivial element.
GroupElement hash_to_group(const Group& group, ByteView seed);

/// True iff pow(g, td.b) == params.base.
bool trapdoor_matches(const CommitParams& params, const Trapdoor& td);

std::pair<Commitment, Opening> commit(const CommitParams& params, const Scalar& x,
                                      RandomSource& rng);
Commitment commit_with_randomness(const CommitParams& params, const Scalar& x,
                                  const Scalar& r);
bool verify(const CommitParams& params, const Commitment& z, const Opening& o);

/// Reopens the commitment behind `o` as a commitment to `x_new`:
/// r' = (x + r*b - x_new) * b^-1.
Opening equivocate(const Trapdoor& td, const Opening& o, const Scalar& x_new);

/// Recovers b = (x1 - x2) * (r2 - r1)^-1 from two openings of one commitment.
/// Throws kSameValue when x1 == x2 and kDegenerateOpenings when r1 == r2.
/// Only when both openings verify against the same Z is g^b == B guaranteed.
Scalar extract(const Opening& o1, const Opening& o2);

/// The multiset {g^x * B^r : r in Z_q}, sorted by value. Throws
/// kEnumerationTooLarge for q > 2^16.
std::vector<GroupElement> hiding_distribution(const CommitParams& params, const Scalar& x);

// Byte formats. Commit params: encode_params(group) || encode_element(B).
Bytes encode_commit_params(const CommitParams& params);
CommitParams decode_commit_params(ByteView bytes);
Bytes encode_commitment(const Commitment& z);
Commitment decode_commitment(ByteView bytes, const Group& group);
/// encode_scalar(x) || encode_scalar(r).
Bytes encode_opening(const Opening& o);
Opening decode_opening(ByteView bytes, const ScalarField& field);
Bytes encode_trapdoor(const Trapdoor& td);
Trapdoor decode_trapdoor(ByteView bytes, const ScalarField& field);

}  // namespace eqcom
