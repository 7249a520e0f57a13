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

#include <gtest/gtest.h>

#include <set>

#include "eqcom/error.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace eqcom {
namespace {

using testing::group_256;
using testing::toy_group;

// Toy setup with trapdoor b = 3, so B = 2^3 = 8.
struct ToySetup {
  Group group = toy_group();
  CommitParams params;
  Trapdoor td;

  ToySetup() : ToySetup(setup_trapdoor(toy_group(), toy_group().field().reduce(3))) {}

 private:
  explicit ToySetup(std::pair<CommitParams, Trapdoor> p)
      : group(p.first.group), params(std::move(p.first)), td(std::move(p.second)) {}
};

Scalar s(const ToySetup& t, long v) { return t.group.field().reduce(v); }

std::uint64_t oracle_commit(std::uint64_t x, std::uint64_t r) {
  return oracle::mod_pow(2, x, 23) * oracle::mod_pow(8, r, 23) % 23;
}

TEST(Setup, TrapdoorToyValue) {
  ToySetup t;
  EXPECT_EQ(t.params.base.value(), oracle::mod_pow(2, 3, 23));
  EXPECT_EQ(t.params.base.value(), 8);
  EXPECT_TRUE(trapdoor_matches(t.params, t.td));
}

TEST(Setup, TrapdoorRandomIsConsistentAndNonzero) {
  auto g = toy_group();
  HashDrbg rng("setup");
  for (int i = 0; i < 10000; ++i) {
    auto [params, td] = setup_trapdoor(g, rng);
    ASSERT_FALSE(td.b.is_zero());
    ASSERT_EQ(pow(g.generator(), td.b), params.base);
  }
  EXPECT_THROW(setup_trapdoor(g, g.field().zero()), Error);
}

TEST(Setup, HonestIsDeterministicAndClearsCofactor) {
  const auto& g = group_256();
  auto a = setup_honest(g, as_bytes("public"));
  auto b = setup_honest(g, as_bytes("public"));
  EXPECT_EQ(a.base, b.base);
  EXPECT_TRUE(pow(a.base, g.field().reduce(g.order())).is_identity());
  EXPECT_FALSE(a.base.is_identity());

  auto toy = setup_honest(toy_group(), as_bytes("public"));
  EXPECT_EQ(oracle::mod_pow(toy.base.value().get_ui(), 11, 23), 1u);
  EXPECT_NE(toy.base.value(), 1);
}

TEST(Setup, HonestSeedsGiveDistinctBases) {
  // 100 draws in a group of order ~2^63: a collision has probability
  // about 100^2 / 2^64, i.e. never in practice.
  Group g(generate_params(64, as_bytes("h2g-64")));
  std::set<mpz_class> seen;
  for (int i = 0; i < 100; ++i) {
    seen.insert(setup_honest(g, as_bytes("seed-" + std::to_string(i))).base.value());
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Commit, ToyExample) {
  ToySetup t;
  EXPECT_EQ(oracle_commit(5, 7), 16u);
  EXPECT_EQ(commit_with_randomness(t.params, s(t, 5), s(t, 7)).value.value(), 16);
  EXPECT_TRUE(commit_with_randomness(t.params, s(t, 0), s(t, 0)).value.is_identity());

  auto rng = testing::forced_bytes({0x07});
  auto [z, o] = commit(t.params, s(t, 5), rng);
  EXPECT_EQ(z.value.value(), 16);
  EXPECT_EQ(o, (Opening{s(t, 5), s(t, 7)}));
}

TEST(Commit, AgreesWithDeterministicVariant) {
  const auto& g = group_256();
  HashDrbg setup_rng("cp");
  auto [params, td] = setup_trapdoor(g, setup_rng);
  HashDrbg rng("commit"), replay("commit"), xs("values");
  for (int i = 0; i < 1000; ++i) {
    auto x = random_scalar(g.field(), xs);
    auto [z, o] = commit(params, x, rng);
    auto r = random_scalar(g.field(), replay);
    EXPECT_EQ(o.r, r);
    EXPECT_EQ(z, commit_with_randomness(params, x, r));
    EXPECT_TRUE(verify(params, z, o));
  }
}

TEST(Verify, ToyExamples) {
  ToySetup t;
  Commitment z{t.group.element(16)};
  EXPECT_TRUE(verify(t.params, z, {s(t, 5), s(t, 7)}));
  EXPECT_EQ(oracle_commit(5, 8), 13u);
  EXPECT_FALSE(verify(t.params, z, {s(t, 5), s(t, 8)}));
}

TEST(Verify, SingleScalarMutationFails) {
  const auto& g = group_256();
  auto params = setup_honest(g, as_bytes("mut"));
  HashDrbg rng("mut");
  for (int i = 0; i < 200; ++i) {
    auto [z, o] = commit(params, random_scalar(g.field(), rng), rng);
    auto delta = random_nonzero_scalar(g.field(), rng);
    EXPECT_FALSE(verify(params, z, {o.x + delta, o.r}));
    EXPECT_FALSE(verify(params, z, {o.x, o.r + delta}));
  }
}

TEST(Equivocate, ToyExample) {
  ToySetup t;
  auto o = equivocate(t.td, {s(t, 5), s(t, 7)}, s(t, 2));
  // r' = (5 + 7*3 - 2) * 3^-1 mod 11, via the oracle inverse.
  auto expected_r = (5 + 7 * 3 - 2) % 11 * *oracle::mod_inverse(3, 11) % 11;
  EXPECT_EQ(expected_r, 8u);
  EXPECT_EQ(o, (Opening{s(t, 2), s(t, 8)}));
  EXPECT_EQ(oracle_commit(2, 8), 16u);
  EXPECT_TRUE(verify(t.params, Commitment{t.group.element(16)}, o));
}

TEST(Equivocate, IdentityAndInvolution) {
  ToySetup t;
  for (long x = 0; x < 11; ++x) {
    for (long r = 0; r < 11; ++r) {
      Opening o{s(t, x), s(t, r)};
      EXPECT_EQ(equivocate(t.td, o, o.x), o);
      for (long x2 = 0; x2 < 11; ++x2) {
        EXPECT_EQ(equivocate(t.td, equivocate(t.td, o, s(t, x2)), o.x), o);
      }
    }
  }
}

TEST(Equivocate, SoundnessExhaustiveToy) {
  ToySetup t;
  for (long x = 0; x < 11; ++x) {
    for (long r = 0; r < 11; ++r) {
      auto z = commit_with_randomness(t.params, s(t, x), s(t, r));
      for (long x2 = 0; x2 < 11; ++x2) {
        auto o2 = equivocate(t.td, {s(t, x), s(t, r)}, s(t, x2));
        EXPECT_EQ(commit_with_randomness(t.params, o2.x, o2.r), z);
      }
    }
  }
}

TEST(Extract, ToyExample) {
  ToySetup t;
  auto b = extract({s(t, 5), s(t, 7)}, {s(t, 2), s(t, 8)});
  EXPECT_EQ(b.value(), *oracle::dlog(2, 8, 23, 11));
  EXPECT_EQ(b.value(), 3);
  EXPECT_EQ(pow(t.group.generator(), b), t.params.base);
}

TEST(Extract, ErrorTaxonomy) {
  ToySetup t;
  Opening o{s(t, 5), s(t, 7)};
  try {
    extract(o, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSameValue);
  }
  try {
    extract(o, {s(t, 6), s(t, 7)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateOpenings);
  }
}

TEST(Extract, RoundTripWithEquivocate) {
  const auto& g = group_256();
  HashDrbg rng("extract");
  for (int i = 0; i < 1000; ++i) {
    auto [params, td] = setup_trapdoor(g, rng);
    auto [z, o] = commit(params, random_scalar(g.field(), rng), rng);
    auto x2 = random_scalar(g.field(), rng);
    if (x2 == o.x) continue;
    auto o2 = equivocate(td, o, x2);
    ASSERT_TRUE(verify(params, z, o2));
    auto b = extract(o, o2);
    EXPECT_EQ(b, td.b);
    EXPECT_EQ(pow(g.generator(), b), params.base);
  }
}

TEST(Binding, AllDoubleOpeningsAgreeToy) {
  // For every subgroup element Z, collect every valid opening by brute force
  // and check every distinct-x pair extracts dlog_2(8) = 3.
  ToySetup t;
  auto b_true = *oracle::dlog(2, 8, 23, 11);
  for (auto zv : oracle::subgroup(23, 11)) {
    Commitment z{t.group.element(zv)};
    std::vector<Opening> openings;
    for (long x = 0; x < 11; ++x) {
      for (long r = 0; r < 11; ++r) {
        if (oracle_commit(x, r) == zv) {
          EXPECT_TRUE(verify(t.params, z, {s(t, x), s(t, r)}));
          openings.push_back({s(t, x), s(t, r)});
        }
      }
    }
    ASSERT_EQ(openings.size(), 11u);  // one r per x
    for (const auto& a : openings) {
      for (const auto& b : openings) {
        if (a.x == b.x) continue;
        EXPECT_EQ(extract(a, b).value(), b_true);
      }
    }
  }
}

TEST(Hiding, ToyDistributionIsWholeSubgroup) {
  ToySetup t;
  auto members = oracle::subgroup(23, 11);
  for (long x = 0; x < 11; ++x) {
    auto dist = hiding_distribution(t.params, s(t, x));
    ASSERT_EQ(dist.size(), 11u);
    for (std::size_t i = 0; i < dist.size(); ++i) EXPECT_EQ(dist[i].value(), members[i]);
  }
}

TEST(Hiding, IdenticalAcrossValues) {
  auto g = toy_group();
  HashDrbg rng("hiding");
  auto [params, td] = setup_trapdoor(g, rng);
  for (long x = 0; x < 11; ++x) {
    for (long x2 = 0; x2 < 11; ++x2) {
      EXPECT_EQ(hiding_distribution(params, g.field().reduce(x)),
                hiding_distribution(params, g.field().reduce(x2)));
    }
  }
}

TEST(Hiding, TooLargeToEnumerate) {
  const auto& g = group_256();
  auto params = setup_honest(g, as_bytes("big"));
  try {
    hiding_distribution(params, g.field().zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEnumerationTooLarge);
  }
}

TEST(Formats, CommitParamsAndOpenings) {
  ToySetup t;
  auto bytes = encode_commit_params(t.params);
  EXPECT_EQ(bytes, (Bytes{0x00, 0x01, 23, 11, 2, 8}));
  auto back = decode_commit_params(bytes);
  EXPECT_EQ(back.base, t.params.base);
  EXPECT_EQ(back.group.params(), t.group.params());
  EXPECT_EQ(encode_opening({s(t, 5), s(t, 7)}), (Bytes{5, 7}));
  EXPECT_EQ(decode_opening(Bytes{5, 7}, t.group.field()), (Opening{s(t, 5), s(t, 7)}));
  EXPECT_THROW(decode_commit_params(Bytes{0x00, 0x01, 23, 11, 2, 1}), Error);  // B = 1
  EXPECT_THROW(decode_commit_params(Bytes{0x00, 0x01, 23, 11, 2, 5}), Error);  // not member
  EXPECT_THROW(decode_trapdoor(Bytes{0}, t.group.field()), Error);

  const auto& g = group_256();
  HashDrbg rng("fmt");
  auto [params, td] = setup_trapdoor(g, rng);
  auto rt = decode_commit_params(encode_commit_params(params));
  EXPECT_EQ(rt.base, params.base);
  EXPECT_EQ(decode_trapdoor(encode_trapdoor(td), g.field()).b, td.b);
}

}  // namespace
}  // namespace eqcom
