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

#include "anred/causality.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "anred/oracle.h"
#include "anred/reach.h"
#include "testing/brute_force.h"
#include "testing/fixtures.h"

namespace anred {
namespace {

using testing::abcd;
using testing::ls;
using testing::tid;

Objective obj(const Network& net, const char* name, int from, int to) {
  return {ls(net, name, from), ls(net, name, to)};
}

std::set<testing::Obj> as_set(const ValidityOracle& o) {
  std::set<testing::Obj> out;
  for (const Objective& v : o.valid_objectives()) {
    out.insert({v.automaton(), v.from.state, v.to.state});
  }
  return out;
}

Network generated(std::uint64_t seed) {
  GeneratorParams params;
  params.seed = seed;
  params.transitions = {1, 5};
  return random_network(params);
}

TEST(CausalityTest, LocalPathsOfRunningExample) {
  const Network net = abcd();
  std::vector<LocalPath> expected = {
      {tid(net, testing::kC01), tid(net, testing::kC12)},
      {tid(net, testing::kC02)}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(local_paths(net, obj(net, "c", 0, 2)), expected);
  EXPECT_EQ(local_paths(net, obj(net, "a", 0, 0)),
            std::vector<LocalPath>{LocalPath{}});
  EXPECT_TRUE(local_paths(net, obj(net, "d", 0, 1)).empty());
}

TEST(CausalityTest, ValidityOnRunningExample) {
  const Network net = abcd();
  const ValidityOracle omega = compute_valid(net, GlobalState::zeros(net));
  EXPECT_TRUE(is_valid(omega, obj(net, "c", 0, 2)));
  EXPECT_FALSE(is_valid(omega, obj(net, "d", 0, 1)));
  EXPECT_TRUE(is_valid(omega, obj(net, "b", 0, 0)));
  for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
    for (StateIndex s = 0; s < net.state_count(a); ++s) {
      EXPECT_TRUE(omega.is_valid({{a, s}, {a, s}}));
    }
  }
  EXPECT_EQ(as_set(omega),
            testing::kleene_valid(net, GlobalState::zeros(net)));
}

TEST(CausalityTest, FilteredPathsOfRunningExample) {
  const Network net = abcd();
  const ValidityOracle omega = compute_valid(net, GlobalState::zeros(net));
  const Objective c02 = obj(net, "c", 0, 2);
  EXPECT_EQ(filtered_local_paths(net, &omega, c02),
            (std::vector<LocalPath>{
                {tid(net, testing::kC01), tid(net, testing::kC12)}}));
  EXPECT_EQ(filtered_local_paths(net, nullptr, c02), local_paths(net, c02));
  EXPECT_EQ(filtered_local_paths(net, &omega, obj(net, "a", 0, 0)),
            std::vector<LocalPath>{LocalPath{}});
}

TEST(CausalityTest, ObjectiveIndexIsDense) {
  const Network net = abcd();
  const ObjectiveIndex index(net);
  EXPECT_EQ(index.size(), 4u + 4u + 9u + 4u);
  for (std::size_t i = 0; i < index.size(); ++i) {
    EXPECT_EQ(index(index.objective(i)), i);
  }
}

TEST(CausalityTest, LocalPathsMatchDefinition) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = generated(seed);
    for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
      for (StateIndex i = 0; i < net.state_count(a); ++i) {
        for (StateIndex j = 0; j < net.state_count(a); ++j) {
          const auto paths = local_paths(net, {{a, i}, {a, j}});
          ASSERT_EQ(paths, testing::paths(net, a, i, j)) << "seed " << seed;
          for (const LocalPath& p : paths) {
            EXPECT_LT(p.size(), net.state_count(a));
          }
        }
      }
    }
  }
}

TEST(CausalityTest, ValidSetIsTheLeastFixpoint) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = generated(seed);
    std::mt19937_64 rng(seed);
    const GlobalState s = random_state(net, rng);
    const ValidityOracle omega = compute_valid(net, s);
    ASSERT_EQ(as_set(omega), testing::kleene_valid(net, s))
        << "seed " << seed;

    // One more application of the operator changes nothing.
    const ObjectiveIndex index(net);
    for (std::size_t i = 0; i < index.size(); ++i) {
      const Objective o = index.objective(i);
      EXPECT_EQ(!filtered_local_paths(net, &omega, o).empty(),
                omega.is_valid(o));
    }
    EXPECT_EQ(compute_valid(net, s, WorklistOrder::lifo()), omega);
    EXPECT_EQ(compute_valid(net, s, WorklistOrder::shuffled(seed)), omega);
  }
}

TEST(CausalityTest, ValidSetIgnoresDeclarationOrder) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Network net = generated(seed);
    std::vector<Transition> shuffled(net.transitions().begin(),
                                     net.transitions().end());
    std::mt19937_64 rng(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Network same({net.automata().begin(), net.automata().end()},
                       shuffled);
    const GlobalState s = random_state(net, rng);
    EXPECT_EQ(compute_valid(same, s), compute_valid(net, s));
    const ObjectiveIndex index(net);
    for (std::size_t i = 0; i < index.size(); ++i) {
      EXPECT_EQ(local_paths(same, index.objective(i)),
                local_paths(net, index.objective(i)));
    }
  }
}

TEST(CausalityTest, InvalidObjectivesFromTheInitialStateAreUnreachable) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = generated(seed);
    std::mt19937_64 rng(seed);
    const GlobalState s = random_state(net, rng);
    const ValidityOracle omega = compute_valid(net, s);
    const std::set<GlobalState> reach = testing::reachable_set(net, s, true);
    for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
      for (StateIndex j = 0; j < net.state_count(a); ++j) {
        if (omega.reachable_local({a, j})) continue;
        for (const GlobalState& r : reach) {
          EXPECT_FALSE(r.contains({a, j})) << "seed " << seed;
        }
      }
    }
  }
}

TEST(CausalityTest, PathTransitionsMatchFilteredPaths) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Network net = generated(seed);
    std::mt19937_64 rng(seed);
    const ValidityOracle omega = compute_valid(net, random_state(net, rng));
    const ObjectiveIndex index(net);
    for (std::size_t i = 0; i < index.size(); ++i) {
      const Objective o = index.objective(i);
      std::set<TransitionId> expected;
      for (const auto& p : filtered_local_paths(net, &omega, o)) {
        expected.insert(p.begin(), p.end());
      }
      EXPECT_EQ(filtered_path_transitions(net, make_filter(omega), o),
                std::vector<TransitionId>(expected.begin(), expected.end()));
      std::set<TransitionId> all;
      for (const auto& p : local_paths(net, o)) all.insert(p.begin(), p.end());
      EXPECT_EQ(filtered_path_transitions(net, {}, o),
                std::vector<TransitionId>(all.begin(), all.end()));
    }
  }
}

// Any trace moving automaton a from a_i to a_j contains, in order, all the
// transitions of some local path of a_i ~> a_j.
TEST(CausalityTest, TracesEmbedALocalPath) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Network net = generated(seed);
    std::mt19937_64 rng(seed);
    const GlobalState s = random_state(net, rng);
    const GlobalState target = random_state(net, rng);
    for (Semantics sem : {Semantics::kAsync, Semantics::kStep}) {
      const LocalStateSet goal{target.local(0)};
      const ReachResult r = reachable(net, s, goal, sem);
      if (!r.witness) continue;
      const GlobalState end = apply_trace(net, s, *r.witness);
      for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
        std::vector<TransitionId> moves;
        for (const Step& step : *r.witness) {
          for (TransitionId id : step.transitions()) {
            if (net.transition(id).automaton() == a) moves.push_back(id);
          }
        }
        bool embeds = false;
        for (const LocalPath& p : local_paths(net, {s.local(a), end.local(a)})) {
          std::size_t k = 0;
          for (TransitionId id : moves) {
            if (k < p.size() && p[k] == id) ++k;
          }
          embeds = embeds || k == p.size();
        }
        EXPECT_TRUE(embeds) << "seed " << seed;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

}  // namespace
}  // namespace anred
