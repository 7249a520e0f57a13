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

#include "eqcom/commitment.hpp"

#include <algorithm>

#include "eqcom/error.hpp"

namespace eqcom {

CommitParams make_commit_params(const Group& group, const GroupElement& base) {
  if (!(base.group() == group)) fail(Errc::kGroupMismatch, "B is not an element of the group");
  if (base.is_identity()) fail(Errc::kInvalidParams, "B must not be the identity");
  return CommitParams{group, base};
}

std::pair<CommitParams, Trapdoor> setup_trapdoor(const Group& group, RandomSource& rng) {
  return setup_trapdoor(group, random_nonzero_scalar(group.field(), rng));
}

std::pair<CommitParams, Trapdoor> setup_trapdoor(const Group& group, const Scalar& b) {
  if (b.is_zero()) fail(Errc::kInvalidParams, "trapdoor must be nonzero");
  return {make_commit_params(group, pow(group.generator(), b)), Trapdoor{b}};
}

GroupElement hash_to_group(const Group& group, ByteView seed) {
  const auto& p = group.modulus();
  mpz_class cofactor = (p - 1) / group.order();
  // 16 extra bytes keep the bias of the mod-p reduction below 2^-128.
  std::size_t wide = group.element_length() + 16;
  for (std::uint32_t counter = 0;; ++counter) {
    Bytes expanded;
    for (std::uint32_t block = 0; expanded.size() < wide; ++block) {
      Bytes ctr;
      append_u32_be(ctr, counter);
      append_u32_be(ctr, block);
      auto d = sha256({as_bytes("eqcom-h2g"), seed, ctr});
      expanded.insert(expanded.end(), d.begin(), d.end());
    }
    expanded.resize(wide);
    mpz_class h = from_bytes(expanded) % p;
    mpz_class v;
    mpz_powm(v.get_mpz_t(), h.get_mpz_t(), cofactor.get_mpz_t(), p.get_mpz_t());
    if (v > 1) return group.element(v);
  }
}

CommitParams setup_honest(const Group& group, ByteView public_seed) {
  return make_commit_params(group, hash_to_group(group, public_seed));
}

bool trapdoor_matches(const CommitParams& params, const Trapdoor& td) {
  return !td.b.is_zero() && td.b.field() == params.group.field() &&
         pow(params.group.generator(), td.b) == params.base;
}

std::pair<Commitment, Opening> commit(const CommitParams& params, const Scalar& x,
                                      RandomSource& rng) {
  Scalar r = random_scalar(params.group.field(), rng);
  return {commit_with_randomness(params, x, r), Opening{x, r}};
}

Commitment commit_with_randomness(const CommitParams& params, const Scalar& x,
                                  const Scalar& r) {
  return Commitment{pow(params.group.generator(), x) * pow(params.base, r)};
}

bool verify(const CommitParams& params, const Commitment& z, const Opening& o) {
  if (!(z.value.group() == params.group) || !(o.x.field() == params.group.field()) ||
      !(o.r.field() == params.group.field())) {
    return false;
  }
  return commit_with_randomness(params, o.x, o.r) == z;
}

Opening equivocate(const Trapdoor& td, const Opening& o, const Scalar& x_new) {
  Scalar r_new = (o.x + o.r * td.b - x_new) * scalar_inv(td.b);
  return Opening{x_new, r_new};
}

Scalar extract(const Opening& o1, const Opening& o2) {
  if (o1.x == o2.x) fail(Errc::kSameValue, "openings commit to the same value");
  if (o1.r == o2.r) fail(Errc::kDegenerateOpenings, "openings share randomness");
  return (o1.x - o2.x) * scalar_inv(o2.r - o1.r);
}

std::vector<GroupElement> hiding_distribution(const CommitParams& params, const Scalar& x) {
  const auto& field = params.group.field();
  if (field.order() > mpz_class(1) << 16) {
    fail(Errc::kEnumerationTooLarge, "q too large to enumerate (limit 2^16)");
  }
  std::vector<GroupElement> out;
  GroupElement gx = pow(params.group.generator(), x);
  GroupElement step = gx;
  for (mpz_class r = 0; r < field.order(); ++r) {
    out.push_back(step);
    step = step * params.base;
  }
  std::sort(out.begin(), out.end(), [](const GroupElement& a, const GroupElement& b) {
    return a.value() < b.value();
  });
  return out;
}

Bytes encode_commit_params(const CommitParams& params) {
  Bytes out = encode_params(params.group.params());
  Bytes b = encode_element(params.base);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

CommitParams decode_commit_params(ByteView bytes) {
  if (bytes.size() < 2) fail(Errc::kWrongLength, "commit params truncated");
  std::size_t width = (std::size_t{bytes[0]} << 8) | bytes[1];
  std::size_t params_len = 2 + 3 * width;
  if (bytes.size() != params_len + width) {
    fail(Errc::kWrongLength, "commit params length does not match header");
  }
  Group group(decode_params(bytes.first(params_len)));
  return make_commit_params(group, decode_element(bytes.subspan(params_len), group));
}

Bytes encode_commitment(const Commitment& z) { return encode_element(z.value); }

Commitment decode_commitment(ByteView bytes, const Group& group) {
  return Commitment{decode_element(bytes, group)};
}

Bytes encode_opening(const Opening& o) {
  Bytes out = encode_scalar(o.x);
  Bytes r = encode_scalar(o.r);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

Opening decode_opening(ByteView bytes, const ScalarField& field) {
  std::size_t w = field.byte_length();
  if (bytes.size() != 2 * w) fail(Errc::kWrongLength, "opening encoding has wrong length");
  return Opening{decode_scalar(bytes.first(w), field), decode_scalar(bytes.subspan(w), field)};
}

Bytes encode_trapdoor(const Trapdoor& td) { return encode_scalar(td.b); }

Trapdoor decode_trapdoor(ByteView bytes, const ScalarField& field) {
  Scalar b = decode_scalar(bytes, field);
  if (b.is_zero()) fail(Errc::kOutOfRange, "trapdoor must be nonzero");
  return Trapdoor{b};
}

}  // namespace eqcom
