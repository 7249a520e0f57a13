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

#include "eqcom/error.hpp"

namespace eqcom {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kGroupMismatch: return "GroupMismatch";
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kSafePrimeNotFound: return "SafePrimeNotFound";
    case Errc::kWrongLength: return "WrongLength";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kNotInSubgroup: return "NotInSubgroup";
    case Errc::kTruncatedFrame: return "TruncatedFrame";
    case Errc::kUnknownKind: return "UnknownKind";
    case Errc::kPayloadLength: return "PayloadLength";
    case Errc::kFrameLength: return "FrameLength";
    case Errc::kSameValue: return "SameValue";
    case Errc::kDegenerateOpenings: return "DegenerateOpenings";
    case Errc::kEnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::kUnknownSession: return "UnknownSession";
    case Errc::kOutOfPhase: return "OutOfPhase";
    case Errc::kBadOpening: return "BadOpening";
    case Errc::kRejectedByPeer: return "RejectedByPeer";
    case Errc::kInvalidSchedule: return "InvalidSchedule";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace eqcom
