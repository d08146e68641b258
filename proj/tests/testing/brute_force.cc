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

#include "testing/brute_force.h"

#include <algorithm>
#include <functional>

namespace anred::testing {

namespace {

bool enabled(const Network& net, const GlobalState& s, TransitionId id) {
  const Transition& t = net.transition(id);
  if (s[t.origin.automaton] != t.origin.state) return false;
  for (LocalState c : t.condition) {
    if (s[c.automaton] != c.state) return false;
  }
  return true;
}

// Plays the steps one after the other; false when one is not playable.
bool play(const Network& net, GlobalState& s, const Trace& trace) {
  for (const Step& step : trace) {
    for (TransitionId id : step.transitions()) {
      if (!enabled(net, s, id)) return false;
    }
    for (TransitionId id : step.transitions()) {
      s.set(net.transition(id).destination);
    }
  }
  return true;
}

std::size_t transition_total(const Trace& trace) {
  std::size_t n = 0;
  for (const Step& s : trace) n += s.size();
  return n;
}

}  // namespace

std::vector<GlobalState> all_states(const Network& network) {
  std::vector<GlobalState> out;
  std::vector<StateIndex> values(network.automaton_count(), 0);
  while (true) {
    out.emplace_back(values);
    std::size_t a = 0;
    for (; a < values.size(); ++a) {
      if (++values[a] < network.state_count(a)) break;
      values[a] = 0;
    }
    if (a == values.size()) return out;
  }
}

std::vector<std::pair<std::vector<TransitionId>, GlobalState>> successors(
    const Network& network, const GlobalState& state, bool step) {
  std::vector<TransitionId> on;
  for (TransitionId id = 0; id < network.transition_count(); ++id) {
    if (enabled(network, state, id)) on.push_back(id);
  }
  std::vector<std::pair<std::vector<TransitionId>, GlobalState>> out;
  const std::size_t subsets = std::size_t{1} << on.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<TransitionId> ids;
    for (std::size_t i = 0; i < on.size(); ++i) {
      if (mask >> i & 1) ids.push_back(on[i]);
    }
    if (!step && ids.size() != 1) continue;
    std::set<AutomatonIndex> movers;
    for (TransitionId id : ids) movers.insert(network.transition(id).automaton());
    if (movers.size() != ids.size()) continue;
    GlobalState next = state;
    for (TransitionId id : ids) next.set(network.transition(id).destination);
    out.emplace_back(std::move(ids), std::move(next));
  }
  return out;
}

std::set<GlobalState> reachable_set(const Network& network,
                                    const GlobalState& initial, bool step) {
  std::set<GlobalState> seen{initial};
  std::vector<GlobalState> todo{initial};
  while (!todo.empty()) {
    const GlobalState s = todo.back();
    todo.pop_back();
    for (auto& [ids, next] : successors(network, s, step)) {
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

std::vector<std::vector<TransitionId>> paths(const Network& network,
                                             AutomatonIndex a, StateIndex from,
                                             StateIndex to) {
  if (from == to) return {{}};
  std::vector<std::vector<TransitionId>> out;
  std::vector<TransitionId> current;
  std::function<void(StateIndex)> extend = [&](StateIndex at) {
    for (TransitionId id = 0; id < network.transition_count(); ++id) {
      const Transition& t = network.transition(id);
      if (t.origin != LocalState{a, at}) continue;
      // A later destination may never be an earlier origin.
      bool loops = false;
      for (TransitionId prev : current) {
        if (network.transition(prev).origin == t.destination) loops = true;
      }
      if (loops) continue;
      current.push_back(id);
      if (t.destination.state == to) {
        out.push_back(current);
      } else {
        extend(t.destination.state);
      }
      current.pop_back();
    }
  };
  extend(from);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<Obj> kleene_valid(const Network& network, const GlobalState& initial) {
  std::set<Obj> omega;
  while (true) {
    std::set<Obj> next;
    for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
      for (StateIndex i = 0; i < network.state_count(a); ++i) {
        for (StateIndex j = 0; j < network.state_count(a); ++j) {
          for (const auto& path : paths(network, a, i, j)) {
            bool ok = true;
            for (TransitionId id : path) {
              for (LocalState c : network.transition(id).condition) {
                ok = ok && omega.count({c.automaton, initial[c.automaton],
                                        c.state}) != 0;
              }
            }
            if (ok) {
              next.insert({a, i, j});
              break;
            }
          }
        }
      }
    }
    if (next == omega) return omega;
    omega = std::move(next);
  }
}

std::set<TransitionId> naive_kept(const Network& network,
                                  const GlobalState& initial, LocalState goal,
                                  const std::set<Obj>* valid) {
  std::set<Obj> b{{goal.automaton, initial[goal.automaton], goal.state}};
  std::set<TransitionId> kept;
  while (true) {
    const std::size_t before = b.size() + kept.size();
    for (const auto& [a, i, j] : b) {
      for (const auto& path : paths(network, a, i, j)) {
        bool ok = true;
        for (TransitionId id : path) {
          for (LocalState c : network.transition(id).condition) {
            ok = ok && (valid == nullptr ||
                        valid->count({c.automaton, initial[c.automaton],
                                      c.state}) != 0);
          }
        }
        if (ok) kept.insert(path.begin(), path.end());
      }
    }
    std::set<Obj> grown = b;
    for (TransitionId id : kept) {
      const Transition& t = network.transition(id);
      for (LocalState c : t.condition) {
        grown.insert({c.automaton, initial[c.automaton], c.state});
      }
      for (const auto& [a, i, j] : b) {
        if (a == t.automaton()) grown.insert({a, t.destination.state, j});
      }
    }
    b = std::move(grown);
    if (b.size() + kept.size() == before) return kept;
  }
}

bool exists_until(const Network& network, const GlobalState& initial,
                  LocalState goal, const LocalStateSet& cut, bool step) {
  const std::vector<GlobalState> states = all_states(network);
  std::set<GlobalState> z;
  for (const GlobalState& s : states) {
    if (s.contains(goal)) z.insert(s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GlobalState& s : states) {
      if (z.count(s) != 0) continue;
      bool avoids = true;
      for (LocalState c : cut) avoids = avoids && !s.contains(c);
      if (!avoids) continue;
      for (const auto& [ids, next] : successors(network, s, step)) {
        if (z.count(next) != 0) {
          z.insert(s);
          changed = true;
          break;
        }
      }
    }
  }
  return z.count(initial) != 0;
}

Minimality naive_minimality(const Network& network, const GlobalState& initial,
                            LocalState goal, const Trace& trace) {
  Minimality m;
  const std::size_t n = trace.size();
  const std::size_t total = transition_total(trace);
  // Positions chosen by the injection, as a bitmask over the trace.
  for (std::size_t chosen = 0; chosen < (std::size_t{1} << n); ++chosen) {
    std::vector<std::size_t> positions;
    std::size_t bits = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (chosen >> p & 1) {
        positions.push_back(p);
        bits += trace[p].size();
      }
    }
    for (std::size_t subset = 0; subset < (std::size_t{1} << bits); ++subset) {
      Trace candidate;
      std::size_t bit = 0;
      for (std::size_t p : positions) {
        std::vector<TransitionId> ids;
        for (TransitionId id : trace[p].transitions()) {
          if (subset >> bit++ & 1) ids.push_back(id);
        }
        candidate.push_back(Step::make(network, ids));
      }
      GlobalState s = initial;
      if (!play(network, s, candidate) || !s.contains(goal)) continue;
      if (transition_total(candidate) < total) m.dropping = false;
      if (candidate != trace) m.structural = false;
    }
  }
  return m;
}

std::vector<Trace> naive_minimal_traces(const Network& network,
                                        const GlobalState& initial,
                                        LocalState goal, std::size_t max_len,
                                        bool step) {
  std::vector<Trace> out;
  if (initial.contains(goal)) out.push_back({});
  Trace current;
  std::function<void(const GlobalState&)> extend = [&](const GlobalState& s) {
    if (current.size() == max_len) return;
    for (auto& [ids, next] : successors(network, s, step)) {
      current.push_back(Step::make(network, ids));
      if (next.contains(goal) &&
          naive_minimality(network, initial, goal, current).dropping) {
        out.push_back(current);
      }
      extend(next);
      current.pop_back();
    }
  };
  extend(initial);
  std::sort(out.begin(), out.end(), [](const Trace& l, const Trace& r) {
    return l.size() != r.size() ? l.size() < r.size() : l < r;
  });
  return out;
}

}  // namespace anred::testing
