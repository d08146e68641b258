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

#include <algorithm>
#include <utility>

namespace anred {

namespace {

void check_objective(const Network& network, const Objective& objective) {
  if (!network.contains(objective.from) || !network.contains(objective.to) ||
      objective.from.automaton != objective.to.automaton) {
    throw Error("objective does not name two local states of one automaton");
  }
}

// Depth-first enumeration of the acyclic local paths of one automaton from
// `from` to `to`, restricted to transitions accepted by `allowed`. Calls
// `on_path` with the transition stack of every complete path, in
// lexicographic order of transition ids, until it returns false.
template <typename Allowed, typename OnPath>
class PathSearch {
 public:
  PathSearch(const Network& network, AutomatonIndex automaton,
             const Allowed& allowed, const OnPath& on_path)
      : network_(network),
        transitions_(network.transitions_of(automaton)),
        allowed_(allowed),
        on_path_(on_path),
        on_stack_(network.state_count(automaton), false) {}

  // False when stopped early.
  bool run(StateIndex from, StateIndex to) {
    target_ = to;
    return visit(from);
  }

 private:
  bool visit(StateIndex state) {
    on_stack_[state] = true;
    bool go_on = true;
    for (TransitionId id : transitions_) {
      const Transition& t = network_.transition(id);
      if (t.origin.state != state || on_stack_[t.destination.state] ||
          !allowed_(t)) {
        continue;
      }
      stack_.push_back(id);
      go_on = t.destination.state == target_ ? on_path_(std::as_const(stack_))
                                             : visit(t.destination.state);
      stack_.pop_back();
      if (!go_on) break;
    }
    on_stack_[state] = false;
    return go_on;
  }

  const Network& network_;
  std::span<const TransitionId> transitions_;
  const Allowed& allowed_;
  const OnPath& on_path_;
  std::vector<bool> on_stack_;
  LocalPath stack_;
  StateIndex target_ = 0;
};

template <typename Allowed, typename OnPath>
bool search_paths(const Network& network, const Objective& objective,
                  const Allowed& allowed, const OnPath& on_path) {
  PathSearch<Allowed, OnPath> search(network, objective.automaton(), allowed,
                                     on_path);
  return search.run(objective.from.state, objective.to.state);
}

bool conditions_pass(const Transition& t, const ConditionFilter& filter) {
  return std::all_of(t.condition.begin(), t.condition.end(), filter);
}

}  // namespace

std::string describe(const Network& network, const Objective& objective) {
  return network.describe(objective.from) + " ~> " +
         std::to_string(network.label(objective.to));
}

ObjectiveIndex::ObjectiveIndex(const Network& network) {
  offsets_.reserve(network.automaton_count());
  widths_.reserve(network.automaton_count());
  for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
    const std::size_t n = network.state_count(a);
    offsets_.push_back(size_);
    widths_.push_back(n);
    size_ += n * n;
  }
}

Objective ObjectiveIndex::objective(std::size_t index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto a = static_cast<AutomatonIndex>(it - offsets_.begin() - 1);
  const std::size_t local = index - offsets_[a];
  return {{a, static_cast<StateIndex>(local / widths_[a])},
          {a, static_cast<StateIndex>(local % widths_[a])}};
}

std::vector<LocalPath> local_paths(const Network& network,
                                   const Objective& objective) {
  check_objective(network, objective);
  if (objective.from == objective.to) return {LocalPath{}};
  std::vector<LocalPath> paths;
  search_paths(
      network, objective, [](const Transition&) { return true; },
      [&paths](const LocalPath& p) {
        paths.push_back(p);
        return true;
      });
  return paths;
}

ValidityOracle::ValidityOracle(const Network& network, GlobalState initial,
                               std::vector<bool> valid)
    : index_(network), initial_(std::move(initial)), valid_(std::move(valid)) {
  if (valid_.size() != index_.size()) {
    throw Error("validity bitset does not match the network objectives");
  }
}

std::size_t ValidityOracle::valid_count() const {
  return static_cast<std::size_t>(
      std::count(valid_.begin(), valid_.end(), true));
}

std::vector<Objective> ValidityOracle::valid_objectives() const {
  std::vector<Objective> out;
  for (std::size_t i = 0; i < valid_.size(); ++i) {
    if (valid_[i]) out.push_back(index_.objective(i));
  }
  return out;
}

ValidityOracle compute_valid(const Network& network, const GlobalState& initial,
                             WorklistOrder order) {
  check_state(network, initial);
  const std::size_t n = network.automaton_count();

  // reachable[a][j]: objective (initial_a ~> a_j) is known valid.
  std::vector<std::vector<bool>> reachable(n);
  for (AutomatonIndex a = 0; a < n; ++a) {
    reachable[a].assign(network.state_count(a), false);
  }
  // readers[b][k]: automata with a transition conditioned on b_k.
  std::vector<std::vector<std::vector<AutomatonIndex>>> readers(n);
  for (AutomatonIndex b = 0; b < n; ++b) {
    readers[b].resize(network.state_count(b));
  }
  for (const Transition& t : network.transitions()) {
    for (LocalState c : t.condition) {
      auto& r = readers[c.automaton][c.state];
      if (r.empty() || r.back() != t.automaton()) r.push_back(t.automaton());
    }
  }

  auto allowed = [&reachable](const Transition& t) {
    return std::all_of(t.condition.begin(), t.condition.end(),
                       [&reachable](LocalState c) {
                         return reachable[c.automaton][c.state];
                       });
  };

  Worklist<LocalState> pending(order);
  for (AutomatonIndex a = 0; a < n; ++a) {
    for (StateIndex j = 0; j < network.state_count(a); ++j) {
      pending.push({a, j});
    }
  }

  while (!pending.empty()) {
    const LocalState target = pending.pop();
    if (reachable[target.automaton][target.state]) continue;
    const Objective objective{initial.local(target.automaton), target};
    // Stops at the first allowed acyclic path.
    const bool valid =
        objective.from == objective.to ||
        !search_paths(network, objective, allowed,
                      [](const LocalPath&) { return false; });
    if (!valid) continue;
    reachable[target.automaton][target.state] = true;
    for (AutomatonIndex r : readers[target.automaton][target.state]) {
      for (StateIndex j = 0; j < network.state_count(r); ++j) {
        if (!reachable[r][j]) pending.push({r, j});
      }
    }
  }

  // With the conditions settled, every objective of automaton a is valid iff
  // its target is reachable from its origin through allowed transitions.
  ObjectiveIndex index(network);
  std::vector<bool> valid(index.size(), false);
  for (AutomatonIndex a = 0; a < n; ++a) {
    const std::size_t states = network.state_count(a);
    for (StateIndex from = 0; from < states; ++from) {
      std::vector<bool> seen(states, false);
      std::vector<StateIndex> stack{from};
      seen[from] = true;
      while (!stack.empty()) {
        const StateIndex s = stack.back();
        stack.pop_back();
        valid[index({{a, from}, {a, s}})] = true;
        for (TransitionId id : network.transitions_of(a)) {
          const Transition& t = network.transition(id);
          if (t.origin.state == s && !seen[t.destination.state] &&
              allowed(t)) {
            seen[t.destination.state] = true;
            stack.push_back(t.destination.state);
          }
        }
      }
    }
  }
  return ValidityOracle(network, initial, std::move(valid));
}

ConditionFilter make_filter(const ValidityOracle& oracle) {
  return [&oracle](LocalState c) { return oracle.reachable_local(c); };
}

std::vector<LocalPath> filtered_local_paths(const Network& network,
                                            const ValidityOracle* oracle,
                                            const Objective& objective) {
  std::vector<LocalPath> paths = local_paths(network, objective);
  if (oracle == nullptr) return paths;
  const ConditionFilter filter = make_filter(*oracle);
  std::erase_if(paths, [&](const LocalPath& path) {
    return !std::all_of(path.begin(), path.end(), [&](TransitionId id) {
      return conditions_pass(network.transition(id), filter);
    });
  });
  return paths;
}

std::vector<TransitionId> filtered_path_transitions(
    const Network& network, const ConditionFilter& filter,
    const Objective& objective) {
  check_objective(network, objective);
  if (objective.from == objective.to) return {};
  const auto transitions = network.transitions_of(objective.automaton());
  std::vector<bool> used(transitions.size(), false);
  const TransitionId first = transitions.empty() ? 0 : transitions.front();
  auto allowed = [&filter](const Transition& t) {
    return !filter || conditions_pass(t, filter);
  };
  search_paths(network, objective, allowed, [&](const LocalPath& path) {
    for (TransitionId id : path) used[id - first] = true;
    return true;
  });
  std::vector<TransitionId> out;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) out.push_back(first + static_cast<TransitionId>(i));
  }
  return out;
}

}  // namespace anred
