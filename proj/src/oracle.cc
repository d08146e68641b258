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

#include "anred/oracle.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace anred {

namespace {

// Depth-first search over per-step subsets of a trace. Failed (position,
// state, dropped) triples are memoized, which keeps the search polynomial in
// the number of distinct intermediate states.
class SubtraceSearch {
 public:
  SubtraceSearch(const Network& network, const Trace& trace,
                 const std::function<bool(const GlobalState&)>& accept)
      : network_(network),
        trace_(trace),
        accept_(accept),
        failed_(2 * (trace.size() + 1)) {}

  bool search(std::size_t position, const GlobalState& state, bool dropped) {
    if (position == trace_.size()) return dropped && accept_(state);
    auto& failed = failed_[2 * position + (dropped ? 1 : 0)];
    if (failed.count(state) != 0) return false;

    const auto ids = trace_[position].transitions();
    const std::size_t full = (std::size_t{1} << ids.size()) - 1;
    // Full step first: most witnesses drop few transitions.
    for (std::size_t n = 0; n <= full; ++n) {
      const std::size_t mask = full - n;
      GlobalState next = state;
      bool ok = true;
      for (std::size_t i = 0; i < ids.size() && ok; ++i) {
        if ((mask >> i & 1) == 0) continue;
        const Transition& t = network_.transition(ids[i]);
        ok = state.contains(t.origin) && state.contains_all(t.condition);
        next.set(t.destination);
      }
      if (ok && search(position + 1, next, dropped || mask != full)) {
        return true;
      }
    }
    failed.insert(state);
    return false;
  }

 private:
  const Network& network_;
  const Trace& trace_;
  const std::function<bool(const GlobalState&)>& accept_;
  std::vector<std::unordered_set<GlobalState>> failed_;
};

struct StateGraph {
  std::vector<GlobalState> states;
  std::vector<std::vector<std::pair<Step, std::size_t>>> successors;
  bool complete = true;
};

StateGraph explore(const Network& network, const GlobalState& initial,
                   Semantics semantics, const Limits& limits) {
  StateGraph g;
  std::unordered_map<GlobalState, std::size_t> index;
  g.states.push_back(initial);
  index.emplace(initial, 0);
  for (std::size_t n = 0; n < g.states.size(); ++n) {
    const GlobalState state = g.states[n];
    std::vector<std::pair<Step, std::size_t>> out;
    for (Step& step : successor_steps(network, state, semantics)) {
      GlobalState next = apply_step(network, state, step);
      auto [it, inserted] = index.emplace(next, g.states.size());
      if (inserted) {
        if (g.states.size() >= limits.max_states) {
          g.complete = false;
          return g;
        }
        g.states.push_back(std::move(next));
      }
      out.emplace_back(std::move(step), it->second);
    }
    g.successors.push_back(std::move(out));
  }
  return g;
}

class MinimalTraceEnumerator {
 public:
  MinimalTraceEnumerator(const Network& network, const GlobalState& initial,
                         LocalState goal, std::size_t max_len,
                         const StateGraph& graph)
      : network_(network),
        initial_(initial),
        goal_(goal),
        max_len_(max_len),
        graph_(graph),
        on_path_(graph.states.size(), false),
        distance_(graph.states.size(), kInfinity) {
    compute_distances();
  }

  std::vector<Trace> run() {
    on_path_[0] = true;
    if (max_len_ > 0) visit(0, 0);
    return std::move(found_);
  }

 private:
  static constexpr std::size_t kInfinity =
      std::numeric_limits<std::size_t>::max();

  void compute_distances() {
    std::vector<std::vector<std::size_t>> predecessors(graph_.states.size());
    std::deque<std::size_t> queue;
    for (std::size_t n = 0; n < graph_.states.size(); ++n) {
      for (const auto& [step, child] : graph_.successors[n]) {
        predecessors[child].push_back(n);
      }
      if (graph_.states[n].contains(goal_)) {
        distance_[n] = 0;
        queue.push_back(n);
      }
    }
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      for (std::size_t p : predecessors[n]) {
        if (distance_[p] == kInfinity) {
          distance_[p] = distance_[n] + 1;
          queue.push_back(p);
        }
      }
    }
  }

  void visit(std::size_t node, std::size_t depth) {
    for (const auto& [step, child] : graph_.successors[node]) {
      if (on_path_[child]) continue;
      const std::size_t remaining = max_len_ - depth - 1;
      if (distance_[child] > remaining) continue;
      current_.push_back(step);
      const GlobalState& reached = graph_.states[child];
      if (reached.contains(goal_)) {
        if (!has_dropping_subtrace(network_, initial_, current_,
                                   [this](const GlobalState& s) {
                                     return s.contains(goal_);
                                   })) {
          found_.push_back(current_);
        }
      } else if (!has_dropping_subtrace(
                     network_, initial_, current_,
                     [&reached](const GlobalState& s) { return s == reached; })) {
        // A prefix that can be shortened to the same state never starts a
        // minimal trace.
        on_path_[child] = true;
        visit(child, depth + 1);
        on_path_[child] = false;
      }
      current_.pop_back();
    }
  }

  const Network& network_;
  const GlobalState& initial_;
  LocalState goal_;
  std::size_t max_len_;
  const StateGraph& graph_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> distance_;
  Trace current_;
  std::vector<Trace> found_;
};

}  // namespace

bool has_dropping_subtrace(
    const Network& network, const GlobalState& initial, const Trace& trace,
    const std::function<bool(const GlobalState&)>& accept) {
  SubtraceSearch search(network, trace, accept);
  return search.search(0, initial, false);
}

bool is_minimal(const Network& network, const GlobalState& initial,
                LocalState goal, const Trace& trace,
                MinimalityReading reading) {
  check_state(network, initial);
  if (!network.contains(goal)) throw Error("goal is not a local state");
  const TraceCheck check = validate_trace(network, initial, trace);
  if (!check) {
    throw Error("trace is not valid: step " +
                std::to_string(*check.failing_step) + " is not playable");
  }
  if (!apply_trace(network, initial, trace).contains(goal)) {
    throw Error("trace does not reach " + network.describe(goal));
  }
  if (has_dropping_subtrace(network, initial, trace,
                            [goal](const GlobalState& s) {
                              return s.contains(goal);
                            })) {
    return false;
  }
  if (reading == MinimalityReading::kStructural) {
    return std::none_of(trace.begin(), trace.end(),
                        [](const Step& s) { return s.empty(); });
  }
  return true;
}

MinimalTraces enumerate_minimal_traces(const Network& network,
                                       const GlobalState& initial,
                                       LocalState goal, std::size_t max_len,
                                       Semantics semantics,
                                       const Limits& limits) {
  check_state(network, initial);
  if (!network.contains(goal)) throw Error("goal is not a local state");
  MinimalTraces result;
  if (initial.contains(goal)) {
    result.traces.push_back({});
    return result;
  }
  const StateGraph graph = explore(network, initial, semantics, limits);
  if (!graph.complete) {
    result.complete = false;
    return result;
  }
  MinimalTraceEnumerator enumerator(network, initial, goal, max_len, graph);
  result.traces = enumerator.run();
  std::sort(result.traces.begin(), result.traces.end(),
            [](const Trace& lhs, const Trace& rhs) {
              if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
              return lhs < rhs;
            });
  return result;
}

std::optional<bool> objective_realizable(const Network& network,
                                         const GlobalState& initial,
                                         const Objective& objective,
                                         const Limits& limits) {
  check_state(network, initial);
  // Product of the global state with whether `from` was already required.
  std::unordered_set<GlobalState> seen[2];
  std::deque<std::pair<GlobalState, int>> queue;
  seen[0].insert(initial);
  queue.emplace_back(initial, 0);
  std::size_t explored = 1;
  while (!queue.empty()) {
    auto [state, phase] = queue.front();
    queue.pop_front();
    for (const Step& step : successor_steps(network, state, Semantics::kStep)) {
      int next_phase = phase;
      if (next_phase == 0) {
        const LocalStateSet pre = step_pre(network, step);
        if (std::binary_search(pre.begin(), pre.end(), objective.from)) {
          next_phase = 1;
        }
      }
      if (next_phase == 1) {
        const LocalStateSet post = step_post(network, step);
        if (std::binary_search(post.begin(), post.end(), objective.to)) {
          return true;
        }
      }
      GlobalState next = apply_step(network, state, step);
      if (seen[next_phase].insert(next).second) {
        if (++explored > limits.max_states) return std::nullopt;
        queue.emplace_back(std::move(next), next_phase);
      }
    }
  }
  return false;
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

GlobalState random_state(const Network& network, std::mt19937_64& rng) {
  std::vector<StateIndex> values;
  for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
    values.push_back(
        static_cast<StateIndex>(draw(rng, 0, network.state_count(a) - 1)));
  }
  return GlobalState(std::move(values));
}

Network random_network(const GeneratorParams& params) {
  for (const Range* r : {&params.automata, &params.states, &params.transitions,
                         &params.condition_size}) {
    if (r->min > r->max) throw Error("generator range with min > max");
  }
  if (params.automata.min == 0) throw Error("networks need an automaton");
  if (params.states.min == 0) throw Error("automata need a local state");
  const std::size_t s = params.states.min;
  if (params.transitions.min > s * (s - 1)) {
    throw Error("more transitions than distinct origin/destination pairs (" +
                std::to_string(s * (s - 1)) + " with " + std::to_string(s) +
                " states)");
  }
  if (params.condition_size.min > params.automata.min - 1) {
    throw Error("conditions larger than the number of other automata");
  }

  std::mt19937_64 rng(params.seed);
  const std::size_t n = draw(rng, params.automata.min, params.automata.max);
  std::vector<Network::Automaton> automata;
  for (std::size_t a = 0; a < n; ++a) {
    std::string name = n <= 26 ? std::string(1, static_cast<char>('a' + a))
                               : "x" + std::to_string(a);
    Network::Automaton decl{std::move(name), {}};
    const std::size_t states = draw(rng, params.states.min, params.states.max);
    for (std::uint32_t i = 0; i < states; ++i) decl.labels.push_back(i);
    automata.push_back(std::move(decl));
  }

  std::vector<Transition> transitions;
  for (AutomatonIndex a = 0; a < n; ++a) {
    const std::size_t states = automata[a].labels.size();
    std::vector<std::pair<StateIndex, StateIndex>> pairs;
    for (StateIndex i = 0; i < states; ++i) {
      for (StateIndex j = 0; j < states; ++j) {
        if (i != j) pairs.emplace_back(i, j);
      }
    }
    const std::size_t count =
        draw(rng, params.transitions.min,
             std::min(params.transitions.max, pairs.size()));
    for (std::size_t k = 0; k < count; ++k) {
      std::swap(pairs[k], pairs[draw(rng, k, pairs.size() - 1)]);
      Transition t{{a, pairs[k].first}, {a, pairs[k].second}, {}};

      std::vector<AutomatonIndex> others;
      for (AutomatonIndex b = 0; b < n; ++b) {
        if (b != a) others.push_back(b);
      }
      const std::size_t size =
          draw(rng, params.condition_size.min,
               std::min(params.condition_size.max, others.size()));
      for (std::size_t c = 0; c < size; ++c) {
        std::swap(others[c], others[draw(rng, c, others.size() - 1)]);
        const AutomatonIndex b = others[c];
        t.condition.push_back(
            {b, static_cast<StateIndex>(
                    draw(rng, 0, automata[b].labels.size() - 1))});
      }
      transitions.push_back(std::move(t));
    }
  }
  return Network(std::move(automata), std::move(transitions));
}

}  // namespace anred
