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

#include "eqcom/random.hpp"

#include <algorithm>

#include "eqcom/error.hpp"

namespace eqcom {

HashDrbg::HashDrbg(ByteView seed)
    : key_(sha256({as_bytes("eqcom-drbg"), seed})) {}

void HashDrbg::refill() {
  Bytes ctr;
  append_u32_be(ctr, static_cast<std::uint32_t>(counter_ >> 32));
  append_u32_be(ctr, static_cast<std::uint32_t>(counter_));
  ++counter_;
  block_ = sha256({key_, ctr});
  used_ = 0;
}

void HashDrbg::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - done, block_.size() - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + done);
    used_ += n;
    done += n;
  }
}

void ScriptedSource::fill(std::span<std::uint8_t> out) {
  if (out.size() > remaining()) fail(Errc::kIo, "scripted random source exhausted");
  std::copy_n(script_.begin() + pos_, out.size(), out.begin());
  pos_ += out.size();
}

Bytes derive_seed(ByteView master, std::string_view label, std::uint32_t index) {
  Bytes msg(label.begin(), label.end());
  msg.push_back(0);
  append_u32_be(msg, index);
  auto mac = hmac_sha256(master, msg);
  return Bytes(mac.begin(), mac.end());
}

}  // namespace eqcom
