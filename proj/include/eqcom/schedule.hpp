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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace eqcom {

/// Per session, the three deliveries happen in this order.
enum class Action { kDeliverFirstMsg, kDeliverCommit, kDeliverOpen };

std::string_view action_name(Action action);

struct ScheduleStep {
  std::size_t session;  // 0-based session index
  Action action;

  friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

struct Schedule {
  std::size_t sessions = 0;
  std::vector<ScheduleStep> steps;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Throws Error(kInvalidSchedule) for a session index >= sessions.
void check_indices(const Schedule& schedule);

/// True when every session performs its three actions exactly once and in
/// protocol order, and every index is in range.
bool is_valid(const Schedule& schedule);

/// Session 0 to completion, then session 1, and so on.
Schedule sequential_schedule(std::size_t sessions);

/// Every first message, then every commit, then every open.
Schedule round_robin_schedule(std::size_t sessions);

/// All interleavings of `sessions` three-step sessions that keep each
/// session's order: (3m)! / (3!)^m of them. Throws kEnumerationTooLarge for
/// sessions > 3 or when more than `max_schedules` would be produced.
std::vector<Schedule> enumerate_schedules(std::size_t sessions, std::size_t max_schedules = 10000);

/// Text form: one "session:action" line per step, action one of first_msg,
/// commit, open. Blank lines and '#' comments are skipped. The session count
/// is `sessions` if nonzero, otherwise one more than the largest index.
Schedule parse_schedule(std::string_view text, std::size_t sessions = 0);
std::string format_schedule(const Schedule& schedule);

}  // namespace eqcom
