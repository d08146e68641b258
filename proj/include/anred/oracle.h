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

// Brute-force ground truth for small networks: trace minimality, exhaustive
// enumeration of minimal traces, objective realizability, and a seeded
// random network generator. Everything here is exponential and meant for
// testing.

#ifndef ANRED_ORACLE_H_
#define ANRED_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "anred/causality.h"
#include "anred/network.h"
#include "anred/reach.h"

namespace anred {

// How to count a sub-trace that keeps every transition of the trace and only
// drops empty steps.
enum class MinimalityReading {
  // Such a sub-trace is not a witness of non-minimality.
  kTransitionDropping,
  // Any different sub-trace is a witness.
  kStructural,
};

// A trace reaches the goal when its final state contains it.
//
// Minimal: no other goal-reaching trace embeds into it through an
// order-preserving injection of steps with each step a subset of its image.
// Throws anred::Error when the trace is not valid or does not reach the goal.
bool is_minimal(const Network& network, const GlobalState& initial,
                LocalState goal, const Trace& trace,
                MinimalityReading reading = MinimalityReading::kTransitionDropping);

// Whether some sub-trace of `trace` (each step replaced by a subset, at least
// one transition dropped) is valid from `initial` and ends in a state accepted
// by `accept`.
bool has_dropping_subtrace(const Network& network, const GlobalState& initial,
                           const Trace& trace,
                           const std::function<bool(const GlobalState&)>& accept);

struct MinimalTraces {
  // Canonical order: by length, then lexicographic on steps.
  std::vector<Trace> traces;
  // False when the state space exceeded the limits.
  bool complete = true;
};

// Every minimal trace of at most `max_len` steps reaching the goal. Traces
// never contain empty steps.
MinimalTraces enumerate_minimal_traces(const Network& network,
                                       const GlobalState& initial,
                                       LocalState goal, std::size_t max_len,
                                       Semantics semantics,
                                       const Limits& limits = {100'000, 0});

// Whether some trace from `initial` has `objective.from` in the pre-condition
// of a step and `objective.to` in the post-condition of the same or a later
// step. Explores the general step semantics; nullopt when over the limits.
std::optional<bool> objective_realizable(const Network& network,
                                         const GlobalState& initial,
                                         const Objective& objective,
                                         const Limits& limits = {100'000, 0});

struct Range {
  std::size_t min = 0;
  std::size_t max = 0;
};

struct GeneratorParams {
  Range automata{2, 4};
  Range states{2, 3};
  Range transitions{1, 4};  // per automaton
  Range condition_size{0, 2};
  std::uint64_t seed = 1;
};

// Deterministic for a given seed. Origin/destination pairs are distinct
// within an automaton; conditions only name other automata. Throws
// anred::Error on infeasible parameters.
Network random_network(const GeneratorParams& params);

// Uniform helpers on a caller-owned generator, portable across standard
// libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi);
GlobalState random_state(const Network& network, std::mt19937_64& rng);

}  // namespace anred

#endif  // ANRED_ORACLE_H_
