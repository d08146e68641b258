// Copyright 2026 The anred Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text format of automata networks (`.an` files).
//
//   # comment
//   "a" [0, 1]                    declares automaton a with states 0 and 1
//   "c" 0 -> 2 when "d"=1         transition of c from 0 to 2 conditioned on d=1
//   "c" 1 -> 2 when "a"=1 and "b"=0
//
// State and goal specifications are comma separated assignments such as
// `"a"=0,"b"=1`; sequential goals separate stages with `;`.

#ifndef ANRED_FORMAT_H_
#define ANRED_FORMAT_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "anred/causality.h"
#include "anred/network.h"

namespace anred {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  // 1-based; 0 when the error is not tied to a position.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

Network parse_model(std::string_view text);
Network parse_model(std::istream& in);

// Deterministic: automata in declaration order, then transitions in canonical
// order.
std::string serialize_model(const Network& network);

// Full global state; automata not mentioned start in their first declared
// state.
GlobalState parse_state_spec(std::string_view text, const Network& network);

// Partial assignment (goals, cut sets, stages), sorted by automaton.
LocalStateSet parse_assignment(std::string_view text, const Network& network);

// Set of local states, possibly several of one automaton (cut sets).
LocalStateSet parse_local_states(std::string_view text, const Network& network);

// `;` separated stages of a sequential goal, each a non-empty assignment.
std::vector<LocalStateSet> parse_stages(std::string_view text,
                                        const Network& network);

// `"a"=0..2`
Objective parse_objective(std::string_view text, const Network& network);

std::string format_assignment(const Network& network,
                              std::span<const LocalState> states);

}  // namespace anred

#endif  // ANRED_FORMAT_H_
