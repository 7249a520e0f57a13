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

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>

#include "eqcom/bytes.hpp"
#include "eqcom/random.hpp"

// Prime-order Schnorr subgroups of Z_p^* and their scalar fields Z_q.
//
// Arithmetic is plain GMP modular arithmetic and is NOT constant time. This
// library is a research/desk-scale toolkit; do not use it to protect secrets
// against side-channel attackers.

namespace eqcom {

/// Big-endian, zero-padded to exactly `width` bytes. Throws kOutOfRange if
/// the value does not fit.
Bytes to_fixed_bytes(const mpz_class& v, std::size_t width);
mpz_class from_bytes(ByteView bytes);
std::size_t byte_length(const mpz_class& v);

/// Probabilistic primality test with error below 2^-64.
bool is_probable_prime(const mpz_class& n);

/// Description of the order-q subgroup of Z_p^* generated by g.
struct GroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class g;

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.p == b.p && a.q == b.q && a.g == b.g;
  }
};

/// Throws Error(kInvalidParams) naming the first violated invariant.
void validate(const GroupParams& params);

/// Safe-prime group (p = 2q + 1) with q of exactly `q_bits` bits, derived
/// deterministically from `seed`. Throws kSafePrimeNotFound after
/// `max_attempts` candidates.
GroupParams generate_params(unsigned q_bits, ByteView seed,
                            std::size_t max_attempts = std::size_t{1} << 22);

/// p = 23, q = 11, g = 2.
GroupParams fixed_test_params();

/// 2-byte big-endian length L of p, then p, q, g each as L big-endian bytes.
Bytes encode_params(const GroupParams& params);
GroupParams decode_params(ByteView bytes);

class Scalar;
class GroupElement;

/// Z_q for a prime q. Cheap to copy; copies share state.
class ScalarField {
 public:
  explicit ScalarField(mpz_class q);

  const mpz_class& order() const { return data_->q; }
  std::size_t byte_length() const { return data_->byte_len; }
  std::size_t bit_length() const { return data_->bit_len; }

  Scalar zero() const;
  Scalar one() const;
  /// v mod q, for any integer v (negative included).
  Scalar reduce(const mpz_class& v) const;
  /// Throws kOutOfRange unless 0 <= v < q.
  Scalar from_integer(const mpz_class& v) const;

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.data_ == b.data_ || a.data_->q == b.data_->q;
  }

 private:
  friend class Scalar;
  struct Data {
    mpz_class q;
    std::size_t byte_len;
    std::size_t bit_len;
  };
  std::shared_ptr<const Data> data_;
};

class Scalar {
 public:
  const mpz_class& value() const { return value_; }
  const ScalarField& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }
  std::string to_string() const { return value_.get_str(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  friend class ScalarField;
  Scalar(ScalarField field, mpz_class value)
      : field_(std::move(field)), value_(std::move(value)) {}

  ScalarField field_;
  mpz_class value_;
};

inline Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scalar_sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
/// Throws Error(kDivisionByZero) for a = 0.
Scalar scalar_inv(const Scalar& a);

/// Exactly uniform over Z_q by rejection sampling.
Scalar random_scalar(const ScalarField& field, RandomSource& rng);
/// Exactly uniform over Z_q \ {0}.
Scalar random_nonzero_scalar(const ScalarField& field, RandomSource& rng);

Bytes encode_scalar(const Scalar& s);
/// Throws kWrongLength or kOutOfRange.
Scalar decode_scalar(ByteView bytes, const ScalarField& field);

/// A validated group together with its scalar field. Cheap to copy.
class Group {
 public:
  /// Validates `params`; throws kInvalidParams.
  explicit Group(const GroupParams& params);

  const GroupParams& params() const { return data_->params; }
  const ScalarField& field() const { return data_->field; }
  const mpz_class& modulus() const { return data_->params.p; }
  const mpz_class& order() const { return data_->params.q; }
  std::size_t element_length() const { return data_->element_len; }

  GroupElement generator() const;
  GroupElement identity() const;
  bool contains(const mpz_class& v) const;
  /// Throws kOutOfRange for v outside [1, p-1], kNotInSubgroup otherwise.
  GroupElement element(const mpz_class& v) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.data_ == b.data_ || a.data_->params == b.data_->params;
  }

 private:
  friend class GroupElement;
  friend GroupElement mul(const GroupElement& a, const GroupElement& b);
  friend GroupElement pow(const GroupElement& a, const Scalar& e);
  struct Data {
    GroupParams params;
    ScalarField field;
    std::size_t element_len;
  };
  explicit Group(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

class GroupElement {
 public:
  const mpz_class& value() const { return value_; }
  Group group() const { return group_; }
  bool is_identity() const { return value_ == 1; }
  std::string to_string() const { return value_.get_str(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b);

 private:
  friend class Group;
  friend GroupElement mul(const GroupElement& a, const GroupElement& b);
  friend GroupElement pow(const GroupElement& a, const Scalar& e);
  GroupElement(Group group, mpz_class value)
      : group_(std::move(group)), value_(std::move(value)) {}

  Group group_;
  mpz_class value_;
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
/// a^e with e taken from the group's scalar field.
GroupElement pow(const GroupElement& a, const Scalar& e);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return mul(a, b);
}

Bytes encode_element(const GroupElement& a);
/// Throws kWrongLength, kOutOfRange or kNotInSubgroup.
GroupElement decode_element(ByteView bytes, const Group& group);

}  // namespace eqcom
