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

// Explicit-state breadth-first exploration of automata networks.

#ifndef ANRED_REACH_H_
#define ANRED_REACH_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "anred/network.h"

namespace anred {

enum class Semantics {
  // One transition per step.
  kAsync,
  // Any non-empty set of simultaneously playable transitions, at most one per
  // automaton.
  kStep,
};

std::string_view to_string(Semantics semantics);
// Accepts "async" and "step".
Semantics parse_semantics(std::string_view text);

struct Limits {
  std::size_t max_states = 10'000'000;
  // Maximum trace length explored; 0 means unbounded.
  std::size_t max_steps = 0;
};

enum class Verdict { kReachable, kUnreachable, kInconclusive };

std::string_view to_string(Verdict verdict);

struct ReachResult {
  Verdict verdict = Verdict::kInconclusive;
  // Shortest in step count, present when reachable and requested.
  std::optional<Trace> witness;
  std::size_t states_explored = 0;
  std::size_t frontier_peak = 0;

  bool reachable() const { return verdict == Verdict::kReachable; }
};

// Successor steps of `state`, in canonical order: async steps by transition
// id, general steps in lexicographic order of their sorted transition ids.
std::vector<Step> successor_steps(const Network& network,
                                  const GlobalState& state,
                                  Semantics semantics);

// Whether some reachable state contains every local state of `goal`.
ReachResult reachable(const Network& network, const GlobalState& initial,
                      std::span<const LocalState> goal,
                      Semantics semantics = Semantics::kAsync,
                      const Limits& limits = {}, bool want_witness = true);

struct StateCount {
  std::size_t count = 0;
  bool complete = false;  // false when a limit was hit
};

StateCount count_states(const Network& network, const GlobalState& initial,
                        Semantics semantics = Semantics::kAsync,
                        const Limits& limits = {});

// All reachable states, sorted; nullopt when a limit is hit.
std::optional<std::vector<GlobalState>> reachable_states(
    const Network& network, const GlobalState& initial,
    Semantics semantics = Semantics::kAsync, const Limits& limits = {});

// Whether every trace to the goal first enters a local state of `cut`, i.e.
// the goal is unreachable once transitions into cut states are removed.
// Requires cut to be disjoint from the initial state and not to contain the
// goal.
ReachResult verify_cut_set(const Network& network, const GlobalState& initial,
                           LocalState goal, std::span<const LocalState> cut,
                           Semantics semantics = Semantics::kAsync,
                           const Limits& limits = {});

// Bit-packed global states used as visited-set keys.
class StateCodec {
 public:
  explicit StateCodec(const Network& network);

  using Key = std::vector<std::uint64_t>;
  Key encode(const GlobalState& state) const;
  GlobalState decode(const Key& key) const;

 private:
  std::vector<unsigned> offsets_;
  std::vector<unsigned> widths_;
  std::size_t words_ = 0;
};

}  // namespace anred

#endif  // ANRED_REACH_H_
