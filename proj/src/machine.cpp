// SPDX-License-Identifier: Apache-2.0
#include "bandlim/machine.hpp"

#include <cctype>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

[[noreturn]] void malformed(int line, const std::string& msg) {
  fail(ErrorKind::MalformedProgram, "line " + std::to_string(line) + ": " + msg);
}

bool is_state(const std::string& s) {
  if (s.empty() || s == "->") return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

char symbol(const std::string& s, int line) {
  if (s.size() != 1 || !std::isgraph(static_cast<unsigned char>(s[0]))) malformed(line, "symbols are single printable characters");
  return s[0];
}

}  // namespace

Machine parse_machine(const std::string& text) {
  Machine m;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::set<std::string> seen;
  std::vector<std::pair<int, std::pair<std::string, char>>> reads;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    const std::string& head = w[0];
    if (head == "name" || head == "start" || head == "halt" || head == "blank" || head == "input") {
      if (w.size() != 2) malformed(line, "'" + head + "' takes one argument");
      if (!seen.insert(head).second) malformed(line, "duplicate '" + head + "'");
      if (head == "name") m.name = w[1];
      else if (head == "start" || head == "halt") {
        if (!is_state(w[1])) malformed(line, "bad state name '" + w[1] + "'");
        (head == "start" ? m.start : m.halt) = w[1];
      } else if (head == "blank") {
        m.blank = symbol(w[1], line);
      } else {
        for (char c : w[1])
          if (!std::isgraph(static_cast<unsigned char>(c))) malformed(line, "bad input symbol");
        m.input = w[1];
      }
      continue;
    }
    if (w.size() != 6 || w[2] != "->") malformed(line, "expected '<state> <read> -> <state> <write> <L|R|S>'");
    if (!is_state(w[0]) || !is_state(w[3])) malformed(line, "bad state name");
    char rd = symbol(w[1], line), wr = symbol(w[4], line);
    int mv = w[5] == "L" ? -1 : w[5] == "R" ? 1 : w[5] == "S" ? 0 : 2;
    if (mv == 2) malformed(line, "move must be L, R or S");
    auto key = std::make_pair(w[0], rd);
    if (m.delta.count(key)) malformed(line, "duplicate transition for (" + w[0] + ", " + rd + ")");
    m.delta[key] = {w[3], wr, mv};
    reads.push_back({line, key});
  }
  if (m.start.empty()) malformed(line, "missing 'start'");
  if (m.halt.empty()) malformed(line, "missing 'halt'");
  if (m.name.empty()) m.name = "machine";
  for (const auto& [ln, key] : reads)
    if (key.first == m.halt) malformed(ln, "the halt state has no transitions");
  return m;
}

Machine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MalformedProgram, "cannot read machine file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

std::optional<std::int64_t> halting_step(const Machine& m, std::int64_t steps) {
  if (m.start == m.halt) return 0;
  std::deque<char> tape(m.input.begin(), m.input.end());
  if (tape.empty()) tape.push_back(m.blank);
  std::size_t head = 0;
  std::string state = m.start;
  for (std::int64_t s = 1; s <= steps; ++s) {
    auto it = m.delta.find({state, tape[head]});
    if (it == m.delta.end()) return std::nullopt;  // stuck
    const auto& a = it->second;
    tape[head] = a.write;
    if (a.move < 0) {
      if (head == 0) tape.push_front(m.blank);
      else --head;
    } else if (a.move > 0) {
      if (++head == tape.size()) tape.push_back(m.blank);
    }
    state = a.next;
    if (state == m.halt) return s;
  }
  return std::nullopt;
}

}  // namespace bandlim
