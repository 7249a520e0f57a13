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

#include "eqcom/group.hpp"

#include <algorithm>

#include "eqcom/error.hpp"

namespace eqcom {

Bytes to_fixed_bytes(const mpz_class& v, std::size_t width) {
  if (v < 0) fail(Errc::kOutOfRange, "negative value cannot be encoded");
  std::size_t len = byte_length(v);
  if (len > width) fail(Errc::kOutOfRange, "value does not fit encoding width");
  Bytes out(width, 0);
  std::size_t written = 0;
  if (len > 0) {
    mpz_export(out.data() + (width - len), &written, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

mpz_class from_bytes(ByteView bytes) {
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

std::size_t byte_length(const mpz_class& v) {
  if (v == 0) return 0;
  return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
}

bool is_probable_prime(const mpz_class& n) {
  // 32 Miller-Rabin rounds: error <= 4^-32.
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// Uniform integer with exactly `bits` significant bits or fewer, from the
// top-masked big-endian draw.
mpz_class draw_bits(RandomSource& rng, std::size_t bits) {
  Bytes buf((bits + 7) / 8);
  rng.fill(buf);
  if (std::size_t extra = buf.size() * 8 - bits; extra > 0) {
    buf[0] &= static_cast<std::uint8_t>(0xff >> extra);
  }
  return from_bytes(buf);
}

}  // namespace

void validate(const GroupParams& params) {
  const auto& [p, q, g] = params;
  if (!is_probable_prime(q)) fail(Errc::kInvalidParams, "q is not prime");
  if (!is_probable_prime(p)) fail(Errc::kInvalidParams, "p is not prime");
  if ((p - 1) % q != 0) fail(Errc::kInvalidParams, "q does not divide p - 1");
  if (g < 2 || g > p - 1) fail(Errc::kInvalidParams, "g outside [2, p - 1]");
  if (powm(g, q, p) != 1) fail(Errc::kInvalidParams, "g does not have order q");
}

GroupParams generate_params(unsigned q_bits, ByteView seed, std::size_t max_attempts) {
  if (q_bits < 4) fail(Errc::kInvalidParams, "q_bits must be at least 4");
  HashDrbg rng(sha256({as_bytes("eqcom-params"), seed}));
  mpz_class top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, q_bits - 1);

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    mpz_class q = draw_bits(rng, q_bits) | top | 1;
    // Cheap single-round filter before the full tests.
    if (mpz_probab_prime_p(q.get_mpz_t(), 1) == 0) continue;
    mpz_class p = 2 * q + 1;
    if (mpz_probab_prime_p(p.get_mpz_t(), 1) == 0) continue;
    if (!is_probable_prime(q) || !is_probable_prime(p)) continue;

    // Squares generate the quadratic residues, which is the order-q subgroup.
    while (true) {
      mpz_class h = draw_bits(rng, mpz_sizeinbase(p.get_mpz_t(), 2)) % p;
      if (h < 2 || h > p - 2) continue;
      mpz_class g = h * h % p;
      if (g != 1) return GroupParams{p, q, g};
    }
  }
  fail(Errc::kSafePrimeNotFound, "no safe prime with " + std::to_string(q_bits) +
                                     "-bit q after " + std::to_string(max_attempts) +
                                     " attempts");
}

GroupParams fixed_test_params() { return GroupParams{23, 11, 2}; }

Bytes encode_params(const GroupParams& params) {
  std::size_t width = byte_length(params.p);
  if (width > 0xffff) fail(Errc::kOutOfRange, "p too large to encode");
  Bytes out{static_cast<std::uint8_t>(width >> 8), static_cast<std::uint8_t>(width)};
  for (const auto* v : {&params.p, &params.q, &params.g}) {
    auto field = to_fixed_bytes(*v, width);
    out.insert(out.end(), field.begin(), field.end());
  }
  return out;
}

GroupParams decode_params(ByteView bytes) {
  if (bytes.size() < 2) fail(Errc::kWrongLength, "group params header truncated");
  std::size_t width = (std::size_t{bytes[0]} << 8) | bytes[1];
  if (width == 0 || bytes.size() != 2 + 3 * width) {
    fail(Errc::kWrongLength, "group params length does not match header");
  }
  GroupParams params{from_bytes(bytes.subspan(2, width)),
                     from_bytes(bytes.subspan(2 + width, width)),
                     from_bytes(bytes.subspan(2 + 2 * width, width))};
  validate(params);
  return params;
}

// ---------------------------------------------------------------------------
// Scalars

ScalarField::ScalarField(mpz_class q) {
  if (!is_probable_prime(q)) fail(Errc::kInvalidParams, "scalar field order must be prime");
  std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  data_ = std::make_shared<const Data>(Data{std::move(q), (bits + 7) / 8, bits});
}

Scalar ScalarField::zero() const { return Scalar(*this, 0); }
Scalar ScalarField::one() const { return Scalar(*this, 1); }

Scalar ScalarField::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), order().get_mpz_t());
  return Scalar(*this, std::move(r));
}

Scalar ScalarField::from_integer(const mpz_class& v) const {
  if (v < 0 || v >= order()) fail(Errc::kOutOfRange, "scalar outside [0, q)");
  return Scalar(*this, v);
}

namespace {

const ScalarField& common_field(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field())) fail(Errc::kGroupMismatch, "scalars from different fields");
  return a.field();
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return common_field(a, b).reduce(a.value_ + b.value_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return common_field(a, b).reduce(a.value_ - b.value_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return common_field(a, b).reduce(a.value_ * b.value_);
}

Scalar operator-(const Scalar& a) { return a.field_.reduce(-a.value_); }

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

Scalar scalar_inv(const Scalar& a) {
  if (a.is_zero()) fail(Errc::kDivisionByZero, "inverse of zero scalar");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), a.field().order().get_mpz_t());
  return a.field().from_integer(r);
}

Scalar random_scalar(const ScalarField& field, RandomSource& rng) {
  while (true) {
    mpz_class v = draw_bits(rng, field.bit_length());
    if (v < field.order()) return field.from_integer(v);
  }
}

Scalar random_nonzero_scalar(const ScalarField& field, RandomSource& rng) {
  while (true) {
    Scalar s = random_scalar(field, rng);
    if (!s.is_zero()) return s;
  }
}

Bytes encode_scalar(const Scalar& s) {
  return to_fixed_bytes(s.value(), s.field().byte_length());
}

Scalar decode_scalar(ByteView bytes, const ScalarField& field) {
  if (bytes.size() != field.byte_length()) {
    fail(Errc::kWrongLength, "scalar encoding has wrong length");
  }
  return field.from_integer(from_bytes(bytes));
}

// ---------------------------------------------------------------------------
// Group elements

Group::Group(const GroupParams& params) {
  validate(params);
  data_ = std::make_shared<const Data>(
      Data{params, ScalarField(params.q), byte_length(params.p)});
}

GroupElement Group::generator() const { return GroupElement(*this, params().g); }
GroupElement Group::identity() const { return GroupElement(*this, 1); }

bool Group::contains(const mpz_class& v) const {
  return v >= 1 && v < modulus() && powm(v, order(), modulus()) == 1;
}

GroupElement Group::element(const mpz_class& v) const {
  if (v < 1 || v >= modulus()) fail(Errc::kOutOfRange, "element outside [1, p)");
  if (powm(v, order(), modulus()) != 1) {
    fail(Errc::kNotInSubgroup, "element not in the order-q subgroup");
  }
  return GroupElement(*this, v);
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.value_ == b.value_ && a.group_ == b.group_;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (!(a.group_ == b.group_)) fail(Errc::kGroupMismatch, "elements from different groups");
  return GroupElement(a.group_, a.value_ * b.value_ % a.group_.modulus());
}

GroupElement pow(const GroupElement& a, const Scalar& e) {
  if (!(e.field() == a.group_.field())) {
    fail(Errc::kGroupMismatch, "exponent field does not match group order");
  }
  return GroupElement(a.group_, powm(a.value_, e.value(), a.group_.modulus()));
}

Bytes encode_element(const GroupElement& a) {
  return to_fixed_bytes(a.value(), a.group().element_length());
}

GroupElement decode_element(ByteView bytes, const Group& group) {
  if (bytes.size() != group.element_length()) {
    fail(Errc::kWrongLength, "element encoding has wrong length");
  }
  return group.element(from_bytes(bytes));
}

}  // namespace eqcom
