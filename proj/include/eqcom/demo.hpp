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

#include "eqcom/endpoint.hpp"
#include "eqcom/transcript.hpp"
#include "eqcom/transport.hpp"

namespace eqcom {

struct PartyOutcome {
  SessionTable sessions;
  Transcript transcript;
};

/// Receiver loop: announces the group on session 0, starts `session_count`
/// sessions (session i draws from derive_seed(seed, "receiver", i)), answers
/// until every session is decided, then half-closes and drains the stream.
PartyOutcome serve_receiver(ByteStream& stream, const Group& group, ReceiverMode mode,
                            std::size_t session_count, ByteView seed);

/// Committer loop: learns the group from PARAMS, commits to `value_for(id)`
/// on each FIRST_MSG and opens right away. Returns at end of stream.
PartyOutcome serve_committer(ByteStream& stream,
                             const std::function<Scalar(SessionId, const Group&)>& value_for,
                             ByteView seed);

/// Runs both loops on two threads over the given connected streams.
std::pair<PartyOutcome, PartyOutcome> run_demo(
    ByteStream& receiver_end, ByteStream& committer_end, const Group& group,
    ReceiverMode mode, std::size_t session_count,
    const std::function<Scalar(SessionId, const Group&)>& value_for, ByteView seed);

}  // namespace eqcom
