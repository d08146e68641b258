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

#include "anred/reach.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>
#include <unordered_map>

namespace anred {

std::string_view to_string(Semantics semantics) {
  return semantics == Semantics::kAsync ? "async" : "step";
}

Semantics parse_semantics(std::string_view text) {
  if (text == "async") return Semantics::kAsync;
  if (text == "step") return Semantics::kStep;
  throw Error("unknown semantics \"" + std::string(text) +
              "\" (expected async or step)");
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kReachable: return "reachable";
    case Verdict::kUnreachable: return "unreachable";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

StateCodec::StateCodec(const Network& network) {
  unsigned bit = 0;
  for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
    const auto width = static_cast<unsigned>(
        std::bit_width(static_cast<std::uint64_t>(network.state_count(a) - 1)));
    // Fields never straddle two words.
    if (bit % 64 + width > 64) bit += 64 - bit % 64;
    offsets_.push_back(bit);
    widths_.push_back(width);
    bit += width;
  }
  words_ = std::max<std::size_t>(1, (bit + 63) / 64);
}

StateCodec::Key StateCodec::encode(const GlobalState& state) const {
  Key key(words_, 0);
  for (std::size_t a = 0; a < offsets_.size(); ++a) {
    key[offsets_[a] / 64] |= static_cast<std::uint64_t>(state[a])
                             << (offsets_[a] % 64);
  }
  return key;
}

GlobalState StateCodec::decode(const Key& key) const {
  std::vector<StateIndex> values(offsets_.size());
  for (std::size_t a = 0; a < offsets_.size(); ++a) {
    if (widths_[a] == 0) continue;
    const std::uint64_t mask = (std::uint64_t{1} << widths_[a]) - 1;
    values[a] = static_cast<StateIndex>(
        (key[offsets_[a] / 64] >> (offsets_[a] % 64)) & mask);
  }
  return GlobalState(std::move(values));
}

namespace {

struct KeyHash {
  std::size_t operator()(const StateCodec::Key& key) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (std::uint64_t w : key) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

void collect_steps(const std::vector<std::vector<TransitionId>>& enabled,
                   std::size_t automaton, std::vector<TransitionId>& current,
                   std::vector<std::vector<TransitionId>>& out) {
  if (automaton == enabled.size()) {
    if (!current.empty()) out.push_back(current);
    return;
  }
  collect_steps(enabled, automaton + 1, current, out);
  for (TransitionId id : enabled[automaton]) {
    current.push_back(id);
    collect_steps(enabled, automaton + 1, current, out);
    current.pop_back();
  }
}

// Breadth-first exploration shared by every query. Stops as soon as a
// discovered state satisfies `is_target`.
class Explorer {
 public:
  Explorer(const Network& network, Semantics semantics, const Limits& limits,
           bool keep_parents)
      : network_(network),
        codec_(network),
        semantics_(semantics),
        limits_(limits),
        keep_parents_(keep_parents) {}

  template <typename IsTarget>
  ReachResult run(const GlobalState& initial, const IsTarget& is_target) {
    check_state(network_, initial);
    discover(initial, kNoParent, Step{}, 0);
    if (is_target(initial)) {
      return finish(Verdict::kReachable, 0);
    }
    std::deque<std::size_t> queue{0};
    bool truncated = false;
    while (!queue.empty()) {
      frontier_peak_ = std::max(frontier_peak_, queue.size());
      const std::size_t node = queue.front();
      queue.pop_front();
      if (limits_.max_steps != 0 && depth_[node] >= limits_.max_steps) {
        truncated = true;
        continue;
      }
      const GlobalState state = codec_.decode(keys_[node]);
      for (Step& step : successor_steps(network_, state, semantics_)) {
        GlobalState next = state;
        for (TransitionId id : step.transitions()) {
          next.set(network_.transition(id).destination);
        }
        const auto found = index_.find(codec_.encode(next));
        if (found != index_.end()) continue;
        if (keys_.size() >= limits_.max_states) {
          return finish(Verdict::kInconclusive, kNoParent);
        }
        const std::size_t child =
            discover(next, node, std::move(step), depth_[node] + 1);
        if (is_target(next)) return finish(Verdict::kReachable, child);
        queue.push_back(child);
      }
    }
    return finish(truncated ? Verdict::kInconclusive : Verdict::kUnreachable,
                  kNoParent);
  }

  std::vector<GlobalState> states() const {
    std::vector<GlobalState> out;
    out.reserve(keys_.size());
    for (const auto& key : keys_) out.push_back(codec_.decode(key));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  std::size_t discover(const GlobalState& state, std::size_t parent, Step via,
                       std::size_t depth) {
    const std::size_t node = keys_.size();
    keys_.push_back(codec_.encode(state));
    index_.emplace(keys_.back(), node);
    depth_.push_back(depth);
    if (keep_parents_) {
      parents_.push_back(parent);
      via_.push_back(std::move(via));
    }
    return node;
  }

  ReachResult finish(Verdict verdict, std::size_t target) {
    ReachResult result;
    result.verdict = verdict;
    result.states_explored = keys_.size();
    result.frontier_peak = frontier_peak_;
    if (verdict == Verdict::kReachable && keep_parents_) {
      Trace trace;
      for (std::size_t n = target; parents_[n] != kNoParent; n = parents_[n]) {
        trace.push_back(via_[n]);
      }
      std::reverse(trace.begin(), trace.end());
      result.witness = std::move(trace);
    }
    return result;
  }

  const Network& network_;
  StateCodec codec_;
  Semantics semantics_;
  Limits limits_;
  bool keep_parents_;
  std::vector<StateCodec::Key> keys_;
  std::unordered_map<StateCodec::Key, std::size_t, KeyHash> index_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> parents_;
  std::vector<Step> via_;
  std::size_t frontier_peak_ = 1;
};

void check_limits(const Limits& limits) {
  if (limits.max_states == 0) throw Error("max_states must be positive");
}

}  // namespace

std::vector<Step> successor_steps(const Network& network,
                                  const GlobalState& state,
                                  Semantics semantics) {
  std::vector<std::vector<TransitionId>> enabled(network.automaton_count());
  for (AutomatonIndex a = 0; a < network.automaton_count(); ++a) {
    for (TransitionId id : network.transitions_of(a)) {
      const Transition& t = network.transition(id);
      if (state.contains(t.origin) && state.contains_all(t.condition)) {
        enabled[a].push_back(id);
      }
    }
  }
  std::vector<Step> steps;
  if (semantics == Semantics::kAsync) {
    for (const auto& ids : enabled) {
      for (TransitionId id : ids) steps.push_back(Step::make(network, {id}));
    }
    return steps;
  }
  std::erase_if(enabled, [](const auto& ids) { return ids.empty(); });
  std::vector<std::vector<TransitionId>> sets;
  std::vector<TransitionId> current;
  collect_steps(enabled, 0, current, sets);
  std::sort(sets.begin(), sets.end());
  steps.reserve(sets.size());
  for (auto& ids : sets) steps.push_back(Step::make(network, std::move(ids)));
  return steps;
}

ReachResult reachable(const Network& network, const GlobalState& initial,
                      std::span<const LocalState> goal, Semantics semantics,
                      const Limits& limits, bool want_witness) {
  check_limits(limits);
  for (LocalState ls : goal) {
    if (!network.contains(ls)) throw Error("goal names an unknown local state");
  }
  Explorer explorer(network, semantics, limits, want_witness);
  return explorer.run(initial, [goal](const GlobalState& s) {
    return s.contains_all(goal);
  });
}

StateCount count_states(const Network& network, const GlobalState& initial,
                        Semantics semantics, const Limits& limits) {
  check_limits(limits);
  Explorer explorer(network, semantics, limits, false);
  const ReachResult r =
      explorer.run(initial, [](const GlobalState&) { return false; });
  return {r.states_explored, r.verdict == Verdict::kUnreachable};
}

std::optional<std::vector<GlobalState>> reachable_states(
    const Network& network, const GlobalState& initial, Semantics semantics,
    const Limits& limits) {
  check_limits(limits);
  Explorer explorer(network, semantics, limits, false);
  const ReachResult r =
      explorer.run(initial, [](const GlobalState&) { return false; });
  if (r.verdict != Verdict::kUnreachable) return std::nullopt;
  return explorer.states();
}

ReachResult verify_cut_set(const Network& network, const GlobalState& initial,
                           LocalState goal, std::span<const LocalState> cut,
                           Semantics semantics, const Limits& limits) {
  check_state(network, initial);
  std::vector<bool> in_cut(network.local_state_count(), false);
  std::vector<std::size_t> offset(network.automaton_count(), 0);
  for (AutomatonIndex a = 1; a < network.automaton_count(); ++a) {
    offset[a] = offset[a - 1] + network.state_count(a - 1);
  }
  for (LocalState ls : cut) {
    if (!network.contains(ls)) {
      throw Error("cut set names an unknown local state");
    }
    if (initial.contains(ls)) {
      throw Error("cut set must be disjoint from the initial state, but " +
                  network.describe(ls) + " holds initially");
    }
    if (ls == goal) throw Error("cut set must not contain the goal");
    in_cut[offset[ls.automaton] + ls.state] = true;
  }
  std::vector<TransitionId> kept;
  for (TransitionId id = 0; id < network.transition_count(); ++id) {
    const LocalState d = network.transition(id).destination;
    if (!in_cut[offset[d.automaton] + d.state]) kept.push_back(id);
  }
  const Network pruned = network.restrict_to(kept);
  ReachResult r = reachable(pruned, initial, std::span(&goal, 1), semantics,
                            limits, true);
  if (r.witness) {
    // Report the witness with ids of the unpruned network.
    Trace mapped;
    for (const Step& step : *r.witness) {
      std::vector<TransitionId> ids;
      for (TransitionId id : step.transitions()) ids.push_back(kept[id]);
      mapped.push_back(Step::make(network, std::move(ids)));
    }
    r.witness = std::move(mapped);
  }
  return r;
}

}  // namespace anred
