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

// Seeded random sweep checking the reduction against the brute-force oracle.

#ifndef ANRED_SWEEP_H_
#define ANRED_SWEEP_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anred/network.h"
#include "anred/oracle.h"
#include "anred/reach.h"

namespace anred {

enum class Check {
  // Every minimal trace only uses kept transitions.
  kMinimalTraces,
  // Same goal verdict on original and reduced networks; reduced reachable
  // states are a subset; static refutation implies unreachability.
  kPreservation,
  // Invalid objectives are unrealizable; Ω is a fixpoint and does not depend
  // on the worklist order.
  kValidity,
  // Cut-set verdicts agree with a search for a cut-avoiding path.
  kCutSet,
};

inline constexpr std::array<Check, 4> kAllChecks = {
    Check::kMinimalTraces, Check::kPreservation, Check::kValidity,
    Check::kCutSet};

std::string_view to_string(Check check);

struct SweepConfig {
  std::uint64_t first_seed = 1;
  std::size_t seeds = 500;
  GeneratorParams params{{2, 4}, {2, 3}, {1, 5}, {0, 2}, 0};
  std::size_t max_len = 6;
  std::size_t cuts_per_instance = 3;
  Limits limits{100'000, 0};
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SweepInstance {
  std::uint64_t seed = 0;
  Network network;
  GlobalState initial;
  // Never holds initially.
  LocalState goal;
};

// Deterministic in (config.params, seed).
SweepInstance make_instance(const SweepConfig& config, std::uint64_t seed);

// Cut sets drawn for an instance: disjoint from the initial state, never
// containing the goal, possibly empty.
std::vector<LocalStateSet> draw_cut_sets(const SweepInstance& instance,
                                         std::size_t count);

struct CheckTally {
  std::size_t checked = 0;
  std::size_t violations = 0;
};

struct InstanceReport {
  std::uint64_t seed = 0;
  std::array<CheckTally, kAllChecks.size()> tallies{};
  std::vector<std::string> messages;
  // Minimal traces enumerated, both semantics together.
  std::size_t minimal_traces = 0;
  // Set when an exploration hit the limits; the instance then counts as
  // neither passed nor failed.
  bool skipped = false;

  CheckTally& tally(Check c) { return tallies[static_cast<std::size_t>(c)]; }
  const CheckTally& tally(Check c) const {
    return tallies[static_cast<std::size_t>(c)];
  }
};

InstanceReport check_instance(const SweepConfig& config,
                              const SweepInstance& instance);

struct SweepReport {
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t minimal_traces = 0;
  std::array<CheckTally, kAllChecks.size()> tallies{};
  std::array<std::vector<std::uint64_t>, kAllChecks.size()> failing_seeds;
  // First messages of failing instances, prefixed by the seed.
  std::vector<std::string> messages;

  const CheckTally& tally(Check c) const {
    return tallies[static_cast<std::size_t>(c)];
  }
  const std::vector<std::uint64_t>& failing(Check c) const {
    return failing_seeds[static_cast<std::size_t>(c)];
  }
  std::size_t violations() const;
};

// Runs every seed, in parallel when threads allow. The report does not
// depend on the thread count.
SweepReport run_sweep(const SweepConfig& config);

}  // namespace anred

#endif  // ANRED_SWEEP_H_
