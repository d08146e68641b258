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

#include "anred/reduction.h"

#include <algorithm>

namespace anred {

namespace {

// The two interleaved worklists building the objective set B and the kept
// transitions tr(B). Membership is tracked with bitsets over the dense
// objective and transition numberings.
class ReductionBuilder {
 public:
  ReductionBuilder(const Network& network, const GlobalState& initial,
                   ConditionFilter filter, WorklistOrder order)
      : network_(network),
        initial_(initial),
        filter_(std::move(filter)),
        index_(network),
        in_b_(index_.size(), false),
        kept_(network.transition_count(), false),
        targets_(network.automaton_count()),
        dests_(network.automaton_count()),
        is_target_(network.automaton_count()),
        is_dest_(network.automaton_count()),
        objectives_(order),
        transitions_(order),
        transitions_first_(order.kind != WorklistOrder::Kind::kFifo) {
    for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
      is_target_[a].assign(network.state_count(a), false);
      is_dest_[a].assign(network.state_count(a), false);
    }
  }

  void run(const Objective& main) {
    add_objective(main);
    while (!objectives_.empty() || !transitions_.empty()) {
      const bool take_transition =
          objectives_.empty() || (transitions_first_ && !transitions_.empty());
      if (take_transition) {
        on_transition(transitions_.pop());
      } else {
        on_objective(objectives_.pop());
      }
    }
  }

  std::vector<Objective> objectives() const {
    std::vector<Objective> out;
    for (std::size_t i = 0; i < in_b_.size(); ++i) {
      if (in_b_[i]) out.push_back(index_.objective(i));
    }
    return out;
  }

  std::vector<TransitionId> kept() const {
    std::vector<TransitionId> out;
    for (TransitionId id = 0; id < kept_.size(); ++id) {
      if (kept_[id]) out.push_back(id);
    }
    return out;
  }

 private:
  void add_objective(const Objective& o) {
    const std::size_t i = index_(o);
    if (in_b_[i]) return;
    in_b_[i] = true;
    objectives_.push(o);
  }

  void add_transition(TransitionId id) {
    if (kept_[id]) return;
    kept_[id] = true;
    transitions_.push(id);
  }

  void on_objective(const Objective& o) {
    for (TransitionId id : filtered_path_transitions(network_, filter_, o)) {
      add_transition(id);
    }
    const AutomatonIndex b = o.automaton();
    if (is_target_[b][o.to.state]) return;
    is_target_[b][o.to.state] = true;
    targets_[b].push_back(o.to.state);
    // Every kept transition of b may precede a visit of the new target.
    for (StateIndex k : dests_[b]) add_objective({{b, k}, o.to});
  }

  void on_transition(TransitionId id) {
    const Transition& t = network_.transition(id);
    for (LocalState c : t.condition) {
      add_objective({initial_.local(c.automaton), c});
    }
    const AutomatonIndex b = t.automaton();
    const StateIndex k = t.destination.state;
    if (is_dest_[b][k]) return;
    is_dest_[b][k] = true;
    dests_[b].push_back(k);
    for (StateIndex i : targets_[b]) add_objective({{b, k}, {b, i}});
  }

  const Network& network_;
  const GlobalState& initial_;
  ConditionFilter filter_;
  ObjectiveIndex index_;
  std::vector<bool> in_b_;
  std::vector<bool> kept_;
  // Per automaton: distinct targets of collected objectives and distinct
  // destinations of kept transitions.
  std::vector<std::vector<StateIndex>> targets_;
  std::vector<std::vector<StateIndex>> dests_;
  std::vector<std::vector<bool>> is_target_;
  std::vector<std::vector<bool>> is_dest_;
  Worklist<Objective> objectives_;
  Worklist<TransitionId> transitions_;
  bool transitions_first_;
};

}  // namespace

ReductionResult reduce(const Network& network, const GlobalState& initial,
                       const Goal& goal, const ReduceOptions& options) {
  check_state(network, initial);
  if (!network.contains(goal.target)) {
    throw Error("goal is not a local state of the network");
  }
  const Objective main{initial.local(goal.target.automaton), goal.target};

  ReductionResult result;
  if (initial.contains(goal.target)) {
    result.trivially_satisfied = true;
    result.objectives = {main};
    result.reduced = network.restrict_to({});
    return result;
  }

  std::optional<ValidityOracle> oracle;
  ConditionFilter filter;
  if (options.filter) {
    if (options.custom_filter) {
      filter = options.custom_filter;
    } else {
      oracle.emplace(compute_valid(network, initial, options.order));
      filter = make_filter(*oracle);
    }
  }

  ReductionBuilder builder(network, initial, filter, options.order);
  builder.run(main);
  result.objectives = builder.objectives();
  result.kept = builder.kept();
  result.reduced = network.restrict_to(result.kept);
  // tr(B) is empty exactly when the main objective has no surviving path.
  result.statically_refuted = result.kept.empty();
  return result;
}

std::pair<Network, Goal> encode_sequential_goal(
    const Network& network, const std::vector<LocalStateSet>& stages,
    const std::string& name) {
  if (stages.empty()) throw Error("sequential goal needs at least one stage");
  if (network.find_automaton(name)) {
    throw Error("automaton \"" + name + "\" already exists");
  }
  const auto g = static_cast<AutomatonIndex>(network.automaton_count());

  std::vector<Network::Automaton> automata(network.automata().begin(),
                                           network.automata().end());
  Network::Automaton extra{name, {}};
  for (std::uint32_t k = 0; k <= stages.size(); ++k) extra.labels.push_back(k);
  automata.push_back(std::move(extra));

  std::vector<Transition> transitions(network.transitions().begin(),
                                      network.transitions().end());
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (stages[k].empty()) {
      throw Error("stage " + std::to_string(k + 1) + " is empty");
    }
    for (LocalState ls : stages[k]) {
      if (!network.contains(ls)) {
        throw Error("stage " + std::to_string(k + 1) +
                    " names an unknown local state");
      }
    }
    transitions.push_back({{g, static_cast<StateIndex>(k)},
                           {g, static_cast<StateIndex>(k + 1)},
                           stages[k]});
  }
  Network extended(std::move(automata), std::move(transitions));
  return {std::move(extended), Goal{{g, static_cast<StateIndex>(stages.size())}}};
}

std::pair<Network, std::vector<AutomatonIndex>> prune_isolated(
    const Network& network, std::span<const LocalState> keep) {
  std::vector<bool> used(network.automaton_count(), false);
  for (const Transition& t : network.transitions()) {
    used[t.automaton()] = true;
    for (LocalState c : t.condition) used[c.automaton] = true;
  }
  for (LocalState ls : keep) used.at(ls.automaton) = true;

  std::vector<AutomatonIndex> old_of_new;
  std::vector<AutomatonIndex> new_of_old(network.automaton_count(), 0);
  std::vector<Network::Automaton> automata;
  for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
    if (!used[a]) continue;
    new_of_old[a] = static_cast<AutomatonIndex>(old_of_new.size());
    old_of_new.push_back(a);
    automata.push_back(network.automaton(a));
  }
  auto remap = [&new_of_old](LocalState ls) {
    return LocalState{new_of_old[ls.automaton], ls.state};
  };
  std::vector<Transition> transitions;
  for (const Transition& t : network.transitions()) {
    Transition r{remap(t.origin), remap(t.destination), {}};
    for (LocalState c : t.condition) r.condition.push_back(remap(c));
    transitions.push_back(std::move(r));
  }
  return {Network(std::move(automata), std::move(transitions)),
          std::move(old_of_new)};
}

GlobalState project_state(const GlobalState& state,
                          std::span<const AutomatonIndex> kept_automata) {
  std::vector<StateIndex> values;
  values.reserve(kept_automata.size());
  for (AutomatonIndex a : kept_automata) values.push_back(state[a]);
  return GlobalState(std::move(values));
}

}  // namespace anred
