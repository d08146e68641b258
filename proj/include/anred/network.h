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

#ifndef ANRED_NETWORK_H_
#define ANRED_NETWORK_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anred {

using AutomatonIndex = std::uint32_t;
using StateIndex = std::uint32_t;
using TransitionId = std::uint32_t;

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State `state` of automaton `automaton`, both dense ordinals of the owning
// Network.
struct LocalState {
  AutomatonIndex automaton = 0;
  StateIndex state = 0;

  friend auto operator<=>(const LocalState&, const LocalState&) = default;
};

// Sorted, duplicate-free set of local states.
using LocalStateSet = std::vector<LocalState>;

// A local transition `origin -> destination` of one automaton, enabled when
// every local state of `condition` holds. `condition` is sorted by automaton
// and holds at most one state per automaton, none of them of the origin's
// automaton.
struct Transition {
  LocalState origin;
  LocalState destination;
  std::vector<LocalState> condition;

  AutomatonIndex automaton() const { return origin.automaton; }

  // origin plus the condition.
  LocalStateSet pre() const;
  // destination plus the condition.
  LocalStateSet post() const;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Automata network: automata with their local states and local transitions.
//
// Immutable once constructed. Transitions are stored in lexicographic order,
// so TransitionId order is the canonical transition order and ids of a single
// automaton are contiguous.
class Network {
 public:
  struct Automaton {
    std::string name;
    // User-visible identifiers of the local states, in declaration order.
    // Dense ordinal i corresponds to labels[i].
    std::vector<std::uint32_t> labels;
  };

  Network() = default;
  // Throws anred::Error when any structural constraint is violated.
  Network(std::vector<Automaton> automata, std::vector<Transition> transitions);

  std::size_t automaton_count() const { return automata_.size(); }
  const Automaton& automaton(AutomatonIndex a) const { return automata_.at(a); }
  std::span<const Automaton> automata() const { return automata_; }
  const std::string& name(AutomatonIndex a) const { return automata_.at(a).name; }
  std::size_t state_count(AutomatonIndex a) const {
    return automata_.at(a).labels.size();
  }
  std::size_t max_state_count() const;
  std::size_t local_state_count() const;

  std::optional<AutomatonIndex> find_automaton(std::string_view name) const;
  std::optional<StateIndex> find_state(AutomatonIndex a,
                                       std::uint32_t label) const;
  std::uint32_t label(LocalState ls) const {
    return automata_.at(ls.automaton).labels.at(ls.state);
  }
  bool contains(LocalState ls) const {
    return ls.automaton < automata_.size() &&
           ls.state < automata_[ls.automaton].labels.size();
  }

  std::size_t transition_count() const { return transitions_.size(); }
  std::span<const Transition> transitions() const { return transitions_; }
  const Transition& transition(TransitionId id) const {
    return transitions_.at(id);
  }
  // Ids of the transitions of automaton `a`, ascending.
  std::span<const TransitionId> transitions_of(AutomatonIndex a) const {
    return by_automaton_.at(a);
  }
  std::optional<TransitionId> find_transition(const Transition& t) const;

  // Same automata and local states, keeping only the listed transitions.
  Network restrict_to(std::span<const TransitionId> ids) const;

  // Human-readable renderings, e.g. `"a"=1` and `"a" 0 -> 1 when "b"=0`.
  std::string describe(LocalState ls) const;
  std::string describe(const Transition& t) const;
  std::string describe_transition(TransitionId id) const {
    return describe(transition(id));
  }

  friend bool operator==(const Network&, const Network&);

 private:
  std::vector<Automaton> automata_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<TransitionId>> by_automaton_;
};

// One local state per automaton, in the network's automaton order.
class GlobalState {
 public:
  GlobalState() = default;
  explicit GlobalState(std::vector<StateIndex> states)
      : states_(std::move(states)) {}
  // All automata in state 0.
  static GlobalState zeros(const Network& network);

  std::size_t size() const { return states_.size(); }
  StateIndex operator[](AutomatonIndex a) const { return states_[a]; }
  LocalState local(AutomatonIndex a) const { return {a, states_[a]}; }
  void set(LocalState ls) { states_.at(ls.automaton) = ls.state; }
  bool contains(LocalState ls) const {
    return ls.automaton < states_.size() && states_[ls.automaton] == ls.state;
  }
  bool contains_all(std::span<const LocalState> states) const;
  std::span<const StateIndex> values() const { return states_; }

  friend auto operator<=>(const GlobalState&, const GlobalState&) = default;

 private:
  std::vector<StateIndex> states_;
};

// Throws anred::Error unless `state` assigns a valid local state to every
// automaton of `network`.
void check_state(const Network& network, const GlobalState& state);

// A set of transitions with at most one transition per automaton, kept sorted
// by automaton. Empty steps are allowed.
class Step {
 public:
  Step() = default;
  // Throws anred::Error on unknown ids or two transitions of one automaton.
  static Step make(const Network& network, std::vector<TransitionId> ids);

  std::span<const TransitionId> transitions() const { return ids_; }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool contains(TransitionId id) const;

  friend auto operator<=>(const Step&, const Step&) = default;

 private:
  std::vector<TransitionId> ids_;
};

using Trace = std::vector<Step>;

// Union of the pre-conditions of the step's transitions.
LocalStateSet step_pre(const Network& network, const Step& step);
// Union of the post-conditions, minus the origins of the step's transitions.
LocalStateSet step_post(const Network& network, const Step& step);

bool playable(const Network& network, const GlobalState& state,
              const Step& step);
// Throws anred::Error when the step is not playable in `state`.
GlobalState apply_step(const Network& network, const GlobalState& state,
                       const Step& step);

struct TraceCheck {
  bool valid = true;
  // 1-based index of the first step not playable, when invalid.
  std::optional<std::size_t> failing_step;

  explicit operator bool() const { return valid; }
};

TraceCheck validate_trace(const Network& network, const GlobalState& start,
                          const Trace& trace);
// Throws anred::Error when the trace is not valid from `start`.
GlobalState apply_trace(const Network& network, const GlobalState& start,
                        const Trace& trace);

// Local states required before each automaton is first touched.
LocalStateSet trace_pre(const Network& network, const Trace& trace);
// Local states produced by the last step touching each automaton.
LocalStateSet trace_post(const Network& network, const Trace& trace);

// Distinct transitions used by the trace, ascending.
std::vector<TransitionId> transitions_of(const Trace& trace);

std::string describe(const Network& network, const Step& step);
std::string describe(const Network& network, const Trace& trace);
std::string describe(const Network& network, const GlobalState& state);

}  // namespace anred

template <>
struct std::hash<anred::GlobalState> {
  std::size_t operator()(const anred::GlobalState& s) const noexcept;
};

#endif  // ANRED_NETWORK_H_
