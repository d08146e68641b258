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

// Shared test helpers around the four-automaton running example.

#ifndef ANRED_TESTS_TESTING_FIXTURES_H_
#define ANRED_TESTS_TESTING_FIXTURES_H_

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "anred/format.h"
#include "anred/network.h"

#ifndef ANRED_TEST_DATA_DIR
#error "ANRED_TEST_DATA_DIR must point at tests/"
#endif

namespace anred::testing {

inline std::string data_path(const std::string& relative) {
  return std::string(ANRED_TEST_DATA_DIR) + "/" + relative;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// a, b, c, d with 2, 2, 3, 2 states.
inline Network abcd() { return parse_model(read_file(data_path("data/abcd.an"))); }

inline LocalState ls(const Network& net, const std::string& name,
                     std::uint32_t label) {
  const AutomatonIndex a = net.find_automaton(name).value();
  return {a, net.find_state(a, label).value()};
}

// Transition id by its rendering, e.g. `"a" 0 -> 1 when "b"=0`.
inline TransitionId tid(const Network& net, const std::string& text) {
  for (TransitionId id = 0; id < net.transition_count(); ++id) {
    if (net.describe_transition(id) == text) return id;
  }
  throw std::runtime_error("no transition " + text);
}

inline Step step(const Network& net, std::initializer_list<const char*> texts) {
  std::vector<TransitionId> ids;
  for (const char* t : texts) ids.push_back(tid(net, t));
  return Step::make(net, ids);
}

inline GlobalState state(const Network& net, const std::string& spec) {
  return parse_state_spec(spec, net);
}

// Transitions of the running example.
inline constexpr const char* kA01 = "\"a\" 0 -> 1 when \"b\"=0";
inline constexpr const char* kA10 = "\"a\" 1 -> 0";
inline constexpr const char* kB01 = "\"b\" 0 -> 1 when \"a\"=1";
inline constexpr const char* kB10 = "\"b\" 1 -> 0 when \"a\"=0";
inline constexpr const char* kC01 = "\"c\" 0 -> 1 when \"a\"=1";
inline constexpr const char* kC10 = "\"c\" 1 -> 0 when \"b\"=1";
inline constexpr const char* kC12 = "\"c\" 1 -> 2 when \"b\"=0";
inline constexpr const char* kC02 = "\"c\" 0 -> 2 when \"d\"=1";

// {a01} :: {b01, c01} :: {a10} :: {b10} :: {c12}
inline Trace long_trace(const Network& net) {
  return {step(net, {kA01}), step(net, {kB01, kC01}), step(net, {kA10}),
          step(net, {kB10}), step(net, {kC12})};
}

// {a01} :: {c01} :: {c12}
inline Trace short_trace(const Network& net) {
  return {step(net, {kA01}), step(net, {kC01}), step(net, {kC12})};
}

}  // namespace anred::testing

#endif  // ANRED_TESTS_TESTING_FIXTURES_H_
