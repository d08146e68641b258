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

// Goal-oriented reduction: keeps only the local transitions that may take part
// in a minimal trace reaching a goal local state from an initial state.

#ifndef ANRED_REDUCTION_H_
#define ANRED_REDUCTION_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anred/causality.h"
#include "anred/network.h"
#include "anred/worklist.h"

namespace anred {

struct Goal {
  LocalState target;
};

struct ReduceOptions {
  // Drop local paths whose conditions are statically unreachable.
  bool filter = true;
  // Replaces the built-in validity fixpoint when set (and filter is on). Must
  // only reject local states that no trace from the initial state reaches.
  ConditionFilter custom_filter;
  WorklistOrder order;
};

struct ReductionResult {
  // Collected objectives, in ObjectiveIndex order.
  std::vector<Objective> objectives;
  // Kept transitions, as ids of the input network, ascending.
  std::vector<TransitionId> kept;
  // Input automata and local states with only the kept transitions.
  Network reduced;
  // The goal holds in the initial state; nothing is kept.
  bool trivially_satisfied = false;
  // No local path to the goal survives the filter: the goal is unreachable.
  bool statically_refuted = false;
};

ReductionResult reduce(const Network& network, const GlobalState& initial,
                       const Goal& goal, const ReduceOptions& options = {});

inline ReductionResult reduce(const Network& network,
                              const GlobalState& initial, const Goal& goal,
                              bool filter) {
  ReduceOptions options;
  options.filter = filter;
  return reduce(network, initial, goal, options);
}

// Network extended with a fresh automaton `name` with states 0..n, where the
// transition k -> k+1 is conditioned on stage k; the goal is its last state.
// Reaching that goal means reaching the stages one after the other.
std::pair<Network, Goal> encode_sequential_goal(
    const Network& network, const std::vector<LocalStateSet>& stages,
    const std::string& name = "goal");

// Removes automata that have no transition, are read by no transition and are
// not named in `keep`. The second member maps new automaton indices to the
// old ones.
std::pair<Network, std::vector<AutomatonIndex>> prune_isolated(
    const Network& network, std::span<const LocalState> keep);

// Projects a global state of `network` onto the automata kept by
// prune_isolated.
GlobalState project_state(const GlobalState& state,
                          std::span<const AutomatonIndex> kept_automata);

}  // namespace anred

#endif  // ANRED_REDUCTION_H_
