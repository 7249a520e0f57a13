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

#include "eqcom/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "eqcom/error.hpp"

namespace eqcom {

std::string_view action_name(Action action) {
  switch (action) {
    case Action::kDeliverFirstMsg: return "first_msg";
    case Action::kDeliverCommit: return "commit";
    case Action::kDeliverOpen: return "open";
  }
  return "unknown";
}

void check_indices(const Schedule& schedule) {
  for (const auto& step : schedule.steps) {
    if (step.session >= schedule.sessions) {
      fail(Errc::kInvalidSchedule, "session index " + std::to_string(step.session) +
                                       " out of range for " +
                                       std::to_string(schedule.sessions) + " sessions");
    }
  }
}

bool is_valid(const Schedule& schedule) {
  std::vector<int> next(schedule.sessions, 0);
  for (const auto& step : schedule.steps) {
    if (step.session >= schedule.sessions) return false;
    if (static_cast<int>(step.action) != next[step.session]) return false;
    ++next[step.session];
  }
  return std::all_of(next.begin(), next.end(), [](int n) { return n == 3; });
}

Schedule sequential_schedule(std::size_t sessions) {
  Schedule s{sessions, {}};
  for (std::size_t i = 0; i < sessions; ++i) {
    for (auto a : {Action::kDeliverFirstMsg, Action::kDeliverCommit, Action::kDeliverOpen}) {
      s.steps.push_back({i, a});
    }
  }
  return s;
}

Schedule round_robin_schedule(std::size_t sessions) {
  Schedule s{sessions, {}};
  for (auto a : {Action::kDeliverFirstMsg, Action::kDeliverCommit, Action::kDeliverOpen}) {
    for (std::size_t i = 0; i < sessions; ++i) s.steps.push_back({i, a});
  }
  return s;
}

namespace {

void enumerate(std::vector<int>& progress, Schedule& current, std::vector<Schedule>& out,
               std::size_t limit) {
  if (current.steps.size() == 3 * current.sessions) {
    if (out.size() == limit) {
      fail(Errc::kEnumerationTooLarge, "more than " + std::to_string(limit) + " schedules");
    }
    out.push_back(current);
    return;
  }
  for (std::size_t i = 0; i < current.sessions; ++i) {
    if (progress[i] == 3) continue;
    current.steps.push_back({i, static_cast<Action>(progress[i])});
    ++progress[i];
    enumerate(progress, current, out, limit);
    --progress[i];
    current.steps.pop_back();
  }
}

}  // namespace

std::vector<Schedule> enumerate_schedules(std::size_t sessions, std::size_t max_schedules) {
  if (sessions > 3) fail(Errc::kEnumerationTooLarge, "schedule enumeration is limited to 3 sessions");
  std::vector<Schedule> out;
  std::vector<int> progress(sessions, 0);
  Schedule current{sessions, {}};
  enumerate(progress, current, out, max_schedules);
  return out;
}

Schedule parse_schedule(std::string_view text, std::size_t sessions) {
  Schedule s;
  std::size_t max_index = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) continue;

    auto bad = [&](const std::string& why) {
      fail(Errc::kInvalidSchedule, "schedule line " + std::to_string(line_no) + ": " + why);
    };
    auto colon = line.find(':');
    if (colon == std::string_view::npos) bad("expected session:action");
    std::string_view idx = line.substr(0, colon);
    std::string_view act = line.substr(colon + 1);
    std::size_t session = 0;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), session);
    if (ec != std::errc() || ptr != idx.data() + idx.size()) bad("bad session index");
    Action action;
    if (act == "first_msg") {
      action = Action::kDeliverFirstMsg;
    } else if (act == "commit") {
      action = Action::kDeliverCommit;
    } else if (act == "open") {
      action = Action::kDeliverOpen;
    } else {
      bad("unknown action '" + std::string(act) + "'");
    }
    max_index = std::max(max_index, session);
    s.steps.push_back({session, action});
  }
  s.sessions = sessions != 0 ? sessions : (s.steps.empty() ? 0 : max_index + 1);
  check_indices(s);
  return s;
}

std::string format_schedule(const Schedule& schedule) {
  std::ostringstream out;
  for (const auto& step : schedule.steps) {
    out << step.session << ':' << action_name(step.action) << '\n';
  }
  return out.str();
}

}  // namespace eqcom
