// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace bandlim {

/// Single-tape machine. Text format, one directive per line, '#' comments:
///
///   name  <id>
///   start <state>
///   halt  <state>
///   blank <symbol>             (default '_')
///   input <symbols>            (optional; head starts on the first one)
///   <state> <read> -> <state> <write> <L|R|S>
///
/// States are identifiers, symbols single printable characters. One step
/// applies one transition. The machine halts after s steps if it enters the
/// halt state with the s-th transition (s = 0 when start == halt). A missing
/// transition leaves the machine stuck, which counts as running forever.
struct Machine {
  std::string name;
  std::string start, halt;
  char blank = '_';
  std::string input;
  struct Action {
    std::string next;
    char write;
    int move;  // -1, 0, +1
  };
  std::map<std::pair<std::string, char>, Action> delta;
};

Machine parse_machine(const std::string& text);
Machine load_machine(const std::string& path);

/// Steps needed to halt, if that happens within `steps`.
std::optional<std::int64_t> halting_step(const Machine& m, std::int64_t steps);

/// g(m, l): did the machine halt within `steps` steps?
inline bool run_machine(const Machine& m, std::int64_t steps) { return halting_step(m, steps).has_value(); }

}  // namespace bandlim
