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

#include "anred/format.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "anred/oracle.h"
#include "anred/reduction.h"
#include "testing/fixtures.h"

namespace anred {
namespace {

using testing::abcd;
using testing::ls;

// Expects a ParseError whose message contains `fragment`, at the position.
void expect_parse_error(std::string_view text, const std::string& fragment,
                        std::size_t line, std::size_t column) {
  try {
    parse_model(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find(fragment), std::string::npos)
        << "message: " << e.message();
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

constexpr std::string_view kTwo = "\"a\" [0, 1]\n\"b\" [0, 1]\n";

TEST(FormatTest, ParsesRunningExample) {
  const Network net = abcd();
  ASSERT_EQ(net.automaton_count(), 4u);
  EXPECT_EQ(net.name(0), "a");
  EXPECT_EQ(net.name(3), "d");
  EXPECT_EQ(net.transition_count(), 8u);
  const auto c02 = net.find_transition(
      {ls(net, "c", 0), ls(net, "c", 2), {ls(net, "d", 1)}});
  ASSERT_TRUE(c02.has_value());
}

TEST(FormatTest, RejectsEmptyDocument) {
  expect_parse_error("", "no automata declared", 0, 0);
  expect_parse_error("# only a comment\n\n", "no automata declared", 0, 0);
}

TEST(FormatTest, RejectsConditionOnOwnAutomaton) {
  expect_parse_error("\"c\" [0, 1, 2]\n\"c\" 0 -> 2 when \"c\"=1\n",
                     "condition on own automaton", 2, 17);
}

TEST(FormatTest, RejectsStructuralErrors) {
  const std::string two(kTwo);
  expect_parse_error(two + "\"z\" 0 -> 1\n", "undeclared automaton \"z\"", 3,
                     1);
  expect_parse_error(two + "\"a\" 0 -> 4\n", "state 4 is not declared", 3, 10);
  expect_parse_error(two + "\"a\" 1 -> 1\n", "self-loop", 3, 10);
  expect_parse_error(two + "\"a\" 0 -> 1 when \"b\"=0 and \"b\"=1\n",
                     "appears twice in a condition", 3, 27);
  expect_parse_error(two + "\"a\" 0 -> 1 when \"b\"=2\n", "state 2", 3, 21);
  expect_parse_error(two + "\"a\" 0 -> 1\n\"a\" 0 -> 1\n",
                     "duplicate transition", 4, 1);
  expect_parse_error(two + "\"a\" [0]\n", "declared twice", 3, 1);
  expect_parse_error("\"a\" [0, 0]\n", "declared twice", 1, 9);
}

TEST(FormatTest, RejectsSyntaxErrors) {
  expect_parse_error("\"a [0, 1]\n", "unterminated name", 1, 1);
  expect_parse_error("\"\" [0]\n", "empty name", 1, 1);
  expect_parse_error("\"a\" [0, 1\n", "expected", 1, 10);
  expect_parse_error("\"a\" [0, 1] x\n", "unexpected character", 1, 12);
  expect_parse_error(std::string(kTwo) + "\"a\" 0 -> 1 when\n", "expected", 3,
                     16);
}

TEST(FormatTest, CommentsWhitespaceAndSparseLabels) {
  const Network net = parse_model(
      "# header\n"
      "  \"x#1\"   [3,7 ,  9]   # trailing\n"
      "\"y\" [0,1]\n"
      "\"x#1\" 3->9 when \"y\"=1\n"
      "\"x#1\"\t7 -> 3\n");
  ASSERT_EQ(net.automaton_count(), 2u);
  EXPECT_EQ(net.name(0), "x#1");
  EXPECT_EQ(net.state_count(0), 3u);
  EXPECT_EQ(net.label({0, 2}), 9u);
  EXPECT_TRUE(net.find_transition({{0, 0}, {0, 2}, {{1, 1}}}).has_value());
  EXPECT_TRUE(net.find_transition({{0, 1}, {0, 0}, {}}).has_value());
  EXPECT_EQ(parse_model(serialize_model(net)), net);
}

TEST(FormatTest, SerializeIsDeterministicAndRoundTrips) {
  const Network net = abcd();
  const std::string text = serialize_model(net);
  EXPECT_EQ(parse_model(text), net);
  EXPECT_EQ(serialize_model(parse_model(text)), text);

  std::istringstream in(text);
  EXPECT_EQ(parse_model(in), net);
}

TEST(FormatTest, DeclarationOrderOfTransitionsDoesNotMatter) {
  const std::string text = testing::read_file(testing::data_path("data/abcd.an"));
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string decls;
  for (std::string line; std::getline(in, line);) {
    if (line.find("->") != std::string::npos) {
      lines.push_back(line);
    } else {
      decls += line + "\n";
    }
  }
  std::mt19937_64 rng(7);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled = decls;
    for (const auto& l : lines) shuffled += l + "\n";
    EXPECT_EQ(parse_model(shuffled), abcd());
  }
}

TEST(FormatTest, ZeroTransitionsSerializeAsDeclarationsOnly) {
  const Network net = parse_model(kTwo);
  EXPECT_EQ(serialize_model(net), kTwo);
}

TEST(FormatTest, ReducedRunningExampleMatchesGolden) {
  const Network net = abcd();
  const GlobalState zero = parse_state_spec("", net);
  const auto c2 = reduce(net, zero, Goal{ls(net, "c", 2)});
  EXPECT_EQ(serialize_model(c2.reduced),
            testing::read_file(testing::data_path("golden/abcd_c2.an")));
  const auto d1 = reduce(net, zero, Goal{ls(net, "d", 1)});
  EXPECT_EQ(serialize_model(d1.reduced),
            testing::read_file(testing::data_path("golden/abcd_d1.an")));
}

TEST(FormatTest, RandomNetworksRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorParams params;
    params.seed = seed;
    const Network net = random_network(params);
    const std::string text = serialize_model(net);
    const Network back = parse_model(text);
    EXPECT_EQ(back, net) << "seed " << seed << "\n" << text;
    EXPECT_EQ(serialize_model(back), text);
  }
}

TEST(FormatTest, StateSpecs) {
  const Network net = abcd();
  EXPECT_EQ(parse_state_spec("\"a\"=0,\"b\"=0,\"c\"=0,\"d\"=0", net),
            GlobalState({0, 0, 0, 0}));
  EXPECT_EQ(parse_state_spec("", net), GlobalState({0, 0, 0, 0}));
  EXPECT_EQ(parse_state_spec(" \"c\" = 2 , \"a\"=1 ", net),
            GlobalState({1, 0, 2, 0}));
  EXPECT_THROW(parse_state_spec("\"e\"=0", net), ParseError);
  EXPECT_THROW(parse_state_spec("\"c\"=3", net), ParseError);
  EXPECT_THROW(parse_state_spec("\"a\"=0,\"a\"=1", net), ParseError);
  EXPECT_THROW(parse_state_spec("\"a\"=0,", net), ParseError);
}

TEST(FormatTest, Assignments) {
  const Network net = abcd();
  EXPECT_EQ(parse_assignment("\"c\"=2", net), LocalStateSet{ls(net, "c", 2)});
  EXPECT_EQ(parse_assignment("\"c\"=2,\"a\"=1", net),
            (LocalStateSet{ls(net, "a", 1), ls(net, "c", 2)}));
  EXPECT_THROW(parse_assignment("\"c\"=2,\"c\"=1", net), ParseError);
  EXPECT_EQ(format_assignment(net, parse_assignment("\"c\"=2,\"a\"=1", net)),
            "\"a\"=1,\"c\"=2");
}

TEST(FormatTest, LocalStateSetsAllowSeveralStatesOfOneAutomaton) {
  const Network net = abcd();
  EXPECT_EQ(parse_local_states("\"c\"=2,\"c\"=1", net),
            (LocalStateSet{ls(net, "c", 1), ls(net, "c", 2)}));
  EXPECT_TRUE(parse_local_states("", net).empty());
  EXPECT_THROW(parse_local_states("\"c\"=1,\"c\"=1", net), ParseError);
}

TEST(FormatTest, Stages) {
  const Network net = abcd();
  const auto stages = parse_stages("\"a\"=1,\"b\"=1;\"c\"=1", net);
  ASSERT_EQ(stages.size(), 2u);
  EXPECT_EQ(stages[0], (LocalStateSet{ls(net, "a", 1), ls(net, "b", 1)}));
  EXPECT_EQ(stages[1], LocalStateSet{ls(net, "c", 1)});
  EXPECT_THROW(parse_stages("\"a\"=1;", net), ParseError);
  EXPECT_THROW(parse_stages("", net), ParseError);
}

TEST(FormatTest, Objectives) {
  const Network net = abcd();
  const Objective o = parse_objective("\"c\"=0..2", net);
  EXPECT_EQ(o.from, ls(net, "c", 0));
  EXPECT_EQ(o.to, ls(net, "c", 2));
  EXPECT_THROW(parse_objective("\"c\"=0..3", net), ParseError);
  EXPECT_THROW(parse_objective("\"c\"=0", net), ParseError);
}

}  // namespace
}  // namespace anred
