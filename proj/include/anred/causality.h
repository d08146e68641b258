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

// Local causality within automata: objectives, acyclic local paths, and the
// static over-approximation of which objectives can be realized from a given
// initial state.

#ifndef ANRED_CAUSALITY_H_
#define ANRED_CAUSALITY_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "anred/network.h"
#include "anred/worklist.h"

namespace anred {

// Requirement of taking one automaton from `from` to `to`.
struct Objective {
  LocalState from;
  LocalState to;

  AutomatonIndex automaton() const { return from.automaton; }

  friend auto operator<=>(const Objective&, const Objective&) = default;
};

std::string describe(const Network& network, const Objective& objective);

// Dense numbering of all objectives of a network: automaton a contributes
// |S(a)|^2 consecutive slots, row-major in (from, to).
class ObjectiveIndex {
 public:
  explicit ObjectiveIndex(const Network& network);

  std::size_t size() const { return size_; }
  std::size_t operator()(const Objective& o) const {
    return offsets_[o.automaton()] + o.from.state * widths_[o.automaton()] +
           o.to.state;
  }
  Objective objective(std::size_t index) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> widths_;
  std::size_t size_ = 0;
};

// Transitions of one automaton, consecutive, never coming back to the origin
// of an earlier transition. The empty path realizes `a_i ~> a_i`.
using LocalPath = std::vector<TransitionId>;

// All acyclic local paths realizing the objective, in lexicographic order of
// transition ids. {ε} when from == to.
std::vector<LocalPath> local_paths(const Network& network,
                                   const Objective& objective);

// Least fixpoint of "an objective is valid when one of its local paths only
// needs conditions b_k whose objective from the initial state of b is valid".
// A sound over-approximation: an invalid objective has no realizing trace
// from the initial state.
class ValidityOracle {
 public:
  ValidityOracle(const Network& network, GlobalState initial,
                 std::vector<bool> valid);

  const GlobalState& initial() const { return initial_; }
  bool is_valid(const Objective& objective) const {
    return valid_[index_(objective)];
  }
  // Whether `target` is valid from the initial state of its automaton.
  bool reachable_local(LocalState target) const {
    return is_valid({initial_.local(target.automaton), target});
  }
  std::size_t valid_count() const;
  // Valid objectives in ObjectiveIndex order.
  std::vector<Objective> valid_objectives() const;
  const std::vector<bool>& bits() const { return valid_; }

  friend bool operator==(const ValidityOracle& lhs, const ValidityOracle& rhs) {
    return lhs.initial_ == rhs.initial_ && lhs.valid_ == rhs.valid_;
  }

 private:
  ObjectiveIndex index_;
  GlobalState initial_;
  std::vector<bool> valid_;
};

ValidityOracle compute_valid(const Network& network, const GlobalState& initial,
                             WorklistOrder order = {});

inline bool is_valid(const ValidityOracle& oracle, const Objective& objective) {
  return oracle.is_valid(objective);
}

// Predicate deciding whether a condition `b_k` may be needed from the initial
// state. Any sound over-approximation can be plugged in.
using ConditionFilter = std::function<bool(LocalState)>;

ConditionFilter make_filter(const ValidityOracle& oracle);

// Local paths whose every enabling condition passes the filter. A null oracle
// keeps every path.
std::vector<LocalPath> filtered_local_paths(const Network& network,
                                            const ValidityOracle* oracle,
                                            const Objective& objective);

// Union of the transitions of the filtered local paths, ascending. Does not
// materialize the paths. An empty filter keeps every path.
std::vector<TransitionId> filtered_path_transitions(
    const Network& network, const ConditionFilter& filter,
    const Objective& objective);

}  // namespace anred

#endif  // ANRED_CAUSALITY_H_
