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

#include "anred/network.h"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace anred {

namespace {

void normalize(LocalStateSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

}  // namespace

LocalStateSet Transition::pre() const {
  LocalStateSet out = condition;
  out.push_back(origin);
  normalize(out);
  return out;
}

LocalStateSet Transition::post() const {
  LocalStateSet out = condition;
  out.push_back(destination);
  normalize(out);
  return out;
}

Network::Network(std::vector<Automaton> automata,
                 std::vector<Transition> transitions)
    : automata_(std::move(automata)), transitions_(std::move(transitions)) {
  std::unordered_set<std::string> names;
  for (const auto& a : automata_) {
    if (a.labels.empty()) {
      throw Error("automaton \"" + a.name + "\" has no local state");
    }
    if (!names.insert(a.name).second) {
      throw Error("duplicate automaton \"" + a.name + "\"");
    }
    std::vector<std::uint32_t> sorted = a.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error("duplicate local state in automaton \"" + a.name + "\"");
    }
  }

  for (auto& t : transitions_) {
    if (!contains(t.origin) || !contains(t.destination) ||
        !std::all_of(t.condition.begin(), t.condition.end(),
                     [this](LocalState c) { return contains(c); })) {
      throw Error("transition references an unknown local state");
    }
    if (t.origin.automaton != t.destination.automaton) {
      throw Error("transition " + describe(t) + " changes automaton");
    }
    if (t.origin == t.destination) {
      throw Error("transition " + describe(t) + " is a self-loop");
    }
    std::sort(t.condition.begin(), t.condition.end());
    for (std::size_t i = 0; i < t.condition.size(); ++i) {
      const LocalState c = t.condition[i];
      if (c.automaton == t.automaton()) {
        throw Error("transition " + describe(t) +
                    " has a condition on its own automaton");
      }
      if (i > 0 && t.condition[i - 1].automaton == c.automaton) {
        throw Error("transition " + describe(t) +
                    " has two conditions on automaton \"" +
                    name(c.automaton) + "\"");
      }
    }
  }

  std::sort(transitions_.begin(), transitions_.end());
  auto dup = std::adjacent_find(transitions_.begin(), transitions_.end());
  if (dup != transitions_.end()) {
    throw Error("duplicate transition " + describe(*dup));
  }

  by_automaton_.resize(automata_.size());
  for (TransitionId id = 0; id < transitions_.size(); ++id) {
    by_automaton_[transitions_[id].automaton()].push_back(id);
  }
}

std::size_t Network::max_state_count() const {
  std::size_t m = 0;
  for (const auto& a : automata_) m = std::max(m, a.labels.size());
  return m;
}

std::size_t Network::local_state_count() const {
  std::size_t n = 0;
  for (const auto& a : automata_) n += a.labels.size();
  return n;
}

std::optional<AutomatonIndex> Network::find_automaton(
    std::string_view name) const {
  for (AutomatonIndex a = 0; a < automata_.size(); ++a) {
    if (automata_[a].name == name) return a;
  }
  return std::nullopt;
}

std::optional<StateIndex> Network::find_state(AutomatonIndex a,
                                              std::uint32_t label) const {
  const auto& labels = automata_.at(a).labels;
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<StateIndex>(it - labels.begin());
}

std::optional<TransitionId> Network::find_transition(
    const Transition& t) const {
  Transition key = t;
  std::sort(key.condition.begin(), key.condition.end());
  auto it = std::lower_bound(transitions_.begin(), transitions_.end(), key);
  if (it == transitions_.end() || *it != key) return std::nullopt;
  return static_cast<TransitionId>(it - transitions_.begin());
}

Network Network::restrict_to(std::span<const TransitionId> ids) const {
  std::vector<Transition> kept;
  kept.reserve(ids.size());
  for (TransitionId id : ids) kept.push_back(transition(id));
  return Network(automata_, std::move(kept));
}

std::string Network::describe(LocalState ls) const {
  std::ostringstream os;
  os << '"' << name(ls.automaton) << "\"=" << label(ls);
  return os.str();
}

std::string Network::describe(const Transition& t) const {
  std::ostringstream os;
  os << '"' << name(t.automaton()) << "\" " << label(t.origin) << " -> "
     << label(t.destination);
  for (std::size_t i = 0; i < t.condition.size(); ++i) {
    os << (i == 0 ? " when " : " and ") << describe(t.condition[i]);
  }
  return os.str();
}

bool operator==(const Network& lhs, const Network& rhs) {
  if (lhs.automata_.size() != rhs.automata_.size()) return false;
  for (std::size_t i = 0; i < lhs.automata_.size(); ++i) {
    if (lhs.automata_[i].name != rhs.automata_[i].name ||
        lhs.automata_[i].labels != rhs.automata_[i].labels) {
      return false;
    }
  }
  return lhs.transitions_ == rhs.transitions_;
}

GlobalState GlobalState::zeros(const Network& network) {
  return GlobalState(std::vector<StateIndex>(network.automaton_count(), 0));
}

bool GlobalState::contains_all(std::span<const LocalState> states) const {
  return std::all_of(states.begin(), states.end(),
                     [this](LocalState ls) { return contains(ls); });
}

void check_state(const Network& network, const GlobalState& state) {
  if (state.size() != network.automaton_count()) {
    throw Error("global state has " + std::to_string(state.size()) +
                " components, network has " +
                std::to_string(network.automaton_count()) + " automata");
  }
  for (AutomatonIndex a = 0; a < state.size(); ++a) {
    if (state[a] >= network.state_count(a)) {
      throw Error("global state assigns an unknown local state to \"" +
                  network.name(a) + "\"");
    }
  }
}

Step Step::make(const Network& network, std::vector<TransitionId> ids) {
  for (TransitionId id : ids) {
    if (id >= network.transition_count()) {
      throw Error("step references unknown transition " + std::to_string(id));
    }
  }
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (network.transition(ids[i - 1]).automaton() ==
        network.transition(ids[i]).automaton()) {
      throw Error("step holds two transitions of automaton \"" +
                  network.name(network.transition(ids[i]).automaton()) + "\"");
    }
  }
  Step step;
  step.ids_ = std::move(ids);
  return step;
}

bool Step::contains(TransitionId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

LocalStateSet step_pre(const Network& network, const Step& step) {
  LocalStateSet out;
  for (TransitionId id : step.transitions()) {
    const Transition& t = network.transition(id);
    out.push_back(t.origin);
    out.insert(out.end(), t.condition.begin(), t.condition.end());
  }
  normalize(out);
  return out;
}

LocalStateSet step_post(const Network& network, const Step& step) {
  LocalStateSet out;
  LocalStateSet origins;
  for (TransitionId id : step.transitions()) {
    const Transition& t = network.transition(id);
    out.push_back(t.destination);
    out.insert(out.end(), t.condition.begin(), t.condition.end());
    origins.push_back(t.origin);
  }
  normalize(out);
  normalize(origins);
  LocalStateSet diff;
  std::set_difference(out.begin(), out.end(), origins.begin(), origins.end(),
                      std::back_inserter(diff));
  return diff;
}

bool playable(const Network& network, const GlobalState& state,
              const Step& step) {
  for (TransitionId id : step.transitions()) {
    const Transition& t = network.transition(id);
    if (!state.contains(t.origin) || !state.contains_all(t.condition)) {
      return false;
    }
  }
  return true;
}

GlobalState apply_step(const Network& network, const GlobalState& state,
                       const Step& step) {
  if (!playable(network, state, step)) {
    throw Error("step " + describe(network, step) + " is not playable in " +
                describe(network, state));
  }
  GlobalState next = state;
  for (TransitionId id : step.transitions()) {
    next.set(network.transition(id).destination);
  }
  return next;
}

TraceCheck validate_trace(const Network& network, const GlobalState& start,
                          const Trace& trace) {
  GlobalState state = start;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!playable(network, state, trace[i])) return {false, i + 1};
    for (TransitionId id : trace[i].transitions()) {
      state.set(network.transition(id).destination);
    }
  }
  return {};
}

GlobalState apply_trace(const Network& network, const GlobalState& start,
                        const Trace& trace) {
  GlobalState state = start;
  for (const Step& step : trace) state = apply_step(network, state, step);
  return state;
}

LocalStateSet trace_pre(const Network& network, const Trace& trace) {
  std::vector<bool> touched(network.automaton_count(), false);
  LocalStateSet out;
  for (const Step& step : trace) {
    LocalStateSet pre = step_pre(network, step);
    for (LocalState ls : pre) {
      if (!touched[ls.automaton]) out.push_back(ls);
    }
    for (LocalState ls : pre) touched[ls.automaton] = true;
  }
  normalize(out);
  return out;
}

LocalStateSet trace_post(const Network& network, const Trace& trace) {
  std::vector<bool> touched(network.automaton_count(), false);
  LocalStateSet out;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    LocalStateSet post = step_post(network, *it);
    for (LocalState ls : post) {
      if (!touched[ls.automaton]) out.push_back(ls);
    }
    for (LocalState ls : post) touched[ls.automaton] = true;
  }
  normalize(out);
  return out;
}

std::vector<TransitionId> transitions_of(const Trace& trace) {
  std::vector<TransitionId> out;
  for (const Step& step : trace) {
    out.insert(out.end(), step.transitions().begin(), step.transitions().end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string describe(const Network& network, const Step& step) {
  std::string out = "{";
  for (std::size_t i = 0; i < step.size(); ++i) {
    if (i > 0) out += ", ";
    out += network.describe_transition(step.transitions()[i]);
  }
  return out + "}";
}

std::string describe(const Network& network, const Trace& trace) {
  if (trace.empty()) return "<empty>";
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) out += " :: ";
    out += describe(network, trace[i]);
  }
  return out;
}

std::string describe(const Network& network, const GlobalState& state) {
  std::string out = "<";
  for (AutomatonIndex a = 0; a < state.size(); ++a) {
    if (a > 0) out += ",";
    out += network.describe(state.local(a));
  }
  return out + ">";
}

}  // namespace anred

std::size_t std::hash<anred::GlobalState>::operator()(
    const anred::GlobalState& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (anred::StateIndex v : s.values()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
