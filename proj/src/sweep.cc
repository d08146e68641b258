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

#include "anred/sweep.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <random>
#include <thread>
#include <unordered_set>

#include "anred/causality.h"
#include "anred/reduction.h"

namespace anred {

std::string_view to_string(Check check) {
  switch (check) {
    case Check::kMinimalTraces: return "minimal_traces";
    case Check::kPreservation: return "preservation";
    case Check::kValidity: return "validity";
    case Check::kCutSet: return "cut_set";
  }
  return "unknown";
}

std::size_t SweepReport::violations() const {
  std::size_t total = 0;
  for (const CheckTally& t : tallies) total += t.violations;
  return total;
}

namespace {

constexpr std::array<Semantics, 2> kSemantics = {Semantics::kAsync,
                                                 Semantics::kStep};

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t salt) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL ^ salt);
}

// Thrown to abandon an instance whose exploration hit the limits.
struct LimitReached {};

// Whether some path reaches the goal through states holding no cut local
// state, the goal state itself excepted.
std::optional<bool> cut_avoiding_path(const Network& network,
                                      const GlobalState& initial,
                                      LocalState goal,
                                      const LocalStateSet& cut,
                                      Semantics semantics,
                                      const Limits& limits) {
  if (initial.contains(goal)) return true;
  std::unordered_set<GlobalState> seen{initial};
  std::deque<GlobalState> queue{initial};
  while (!queue.empty()) {
    const GlobalState state = std::move(queue.front());
    queue.pop_front();
    for (const Step& step : successor_steps(network, state, semantics)) {
      GlobalState next = apply_step(network, state, step);
      if (next.contains(goal)) return true;
      if (std::any_of(cut.begin(), cut.end(),
                      [&next](LocalState c) { return next.contains(c); })) {
        continue;
      }
      if (seen.insert(next).second) {
        if (seen.size() > limits.max_states) return std::nullopt;
        queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

class InstanceChecker {
 public:
  InstanceChecker(const SweepConfig& config, const SweepInstance& instance,
                  InstanceReport& report)
      : config_(config),
        instance_(instance),
        net_(instance.network),
        report_(report) {}

  void run() {
    const Goal goal{instance_.goal};
    reductions_[0] = reduce(net_, instance_.initial, goal, true);
    reductions_[1] = reduce(net_, instance_.initial, goal, false);
    current_ = Check::kMinimalTraces;
    check_minimal_traces();
    current_ = Check::kPreservation;
    check_preservation();
    current_ = Check::kValidity;
    check_validity();
    current_ = Check::kCutSet;
    check_cut_sets();
  }

  Check current() const { return current_; }

  void fail(std::string message) {
    ++report_.tally(current_).violations;
    report_.messages.push_back(std::string(to_string(current_)) + ": " +
                               std::move(message));
  }

 private:
  void count() { ++report_.tally(current_).checked; }

  static std::string filter_name(std::size_t f) {
    return f == 0 ? "filter on" : "filter off";
  }

  void check_minimal_traces() {
    for (Semantics semantics : kSemantics) {
      const MinimalTraces found = enumerate_minimal_traces(
          net_, instance_.initial, instance_.goal, config_.max_len, semantics,
          config_.limits);
      if (!found.complete) throw LimitReached{};
      report_.minimal_traces += found.traces.size();
      for (const Trace& trace : found.traces) {
        const std::vector<TransitionId> used = transitions_of(trace);
        for (std::size_t f = 0; f < 2; ++f) {
          count();
          const auto& kept = reductions_[f].kept;
          if (!std::includes(kept.begin(), kept.end(), used.begin(),
                             used.end())) {
            fail(std::string(to_string(semantics)) + ", " + filter_name(f) +
                 ": minimal trace " + describe(net_, trace) +
                 " uses a removed transition");
          }
        }
      }
    }
  }

  void check_preservation() {
    const LocalState goal = instance_.goal;
    for (std::size_t f = 0; f < 2; ++f) {
      const ReductionResult& r = reductions_[f];
      for (Semantics semantics : kSemantics) {
        const auto before = reachable(net_, instance_.initial,
                                      std::span(&goal, 1), semantics,
                                      config_.limits, false);
        const auto after = reachable(r.reduced, instance_.initial,
                                     std::span(&goal, 1), semantics,
                                     config_.limits, false);
        if (before.verdict == Verdict::kInconclusive ||
            after.verdict == Verdict::kInconclusive) {
          throw LimitReached{};
        }
        const std::string where =
            std::string(to_string(semantics)) + ", " + filter_name(f);
        count();
        if (before.verdict != after.verdict) {
          fail(where + ": goal " + std::string(to_string(before.verdict)) +
               " originally but " + std::string(to_string(after.verdict)) +
               " after reduction");
        }
        count();
        if (r.statically_refuted && before.reachable()) {
          fail(where + ": statically refuted goal is reachable");
        }
        const auto all = reachable_states(net_, instance_.initial, semantics,
                                          config_.limits);
        const auto kept = reachable_states(r.reduced, instance_.initial,
                                           semantics, config_.limits);
        if (!all || !kept) throw LimitReached{};
        count();
        if (!std::includes(all->begin(), all->end(), kept->begin(),
                           kept->end())) {
          fail(where + ": reduced network reaches a new state");
        }
      }
    }
  }

  void check_validity() {
    const GlobalState& initial = instance_.initial;
    const ValidityOracle omega =
        compute_valid(net_, initial, WorklistOrder::fifo());
    count();
    if (!(compute_valid(net_, initial, WorklistOrder::lifo()) == omega) ||
        !(compute_valid(net_, initial, WorklistOrder::shuffled(instance_.seed)) ==
          omega)) {
      fail("valid set depends on the worklist order");
    }

    const ObjectiveIndex index(net_);
    std::size_t unstable = 0;
    for (std::size_t i = 0; i < index.size(); ++i) {
      const Objective o = index.objective(i);
      const bool next = !filtered_local_paths(net_, &omega, o).empty();
      if (next != omega.is_valid(o)) ++unstable;
    }
    count();
    if (unstable != 0) {
      fail("valid set is not a fixpoint (" + std::to_string(unstable) +
           " objectives change)");
    }

    for (std::size_t i = 0; i < index.size(); ++i) {
      const Objective o = index.objective(i);
      if (omega.is_valid(o)) continue;
      const auto realizable =
          objective_realizable(net_, initial, o, config_.limits);
      if (!realizable) throw LimitReached{};
      count();
      if (*realizable) {
        fail("invalid objective " + describe(net_, o) + " is realizable");
      }
    }
  }

  void check_cut_sets() {
    const LocalState goal = instance_.goal;
    for (const LocalStateSet& cut :
         draw_cut_sets(instance_, config_.cuts_per_instance)) {
      for (Semantics semantics : kSemantics) {
        const ReachResult r = verify_cut_set(net_, instance_.initial, goal,
                                             cut, semantics, config_.limits);
        const auto path = cut_avoiding_path(net_, instance_.initial, goal, cut,
                                            semantics, config_.limits);
        if (r.verdict == Verdict::kInconclusive || !path) throw LimitReached{};
        const std::string where = std::string(to_string(semantics)) +
                                  ", cut {" + describe_cut(cut) + "}";
        count();
        if ((r.verdict == Verdict::kUnreachable) == *path) {
          fail(where + ": cut-set verdict disagrees with path search");
        }
        if (r.witness) {
          count();
          if (!witness_avoids(*r.witness, cut)) {
            fail(where + ": witness " + describe(net_, *r.witness) +
                 " does not avoid the cut");
          }
        }
      }
    }
  }

  std::string describe_cut(const LocalStateSet& cut) const {
    std::string out;
    for (LocalState c : cut) {
      if (!out.empty()) out += ", ";
      out += net_.describe(c);
    }
    return out;
  }

  bool witness_avoids(const Trace& witness, const LocalStateSet& cut) const {
    if (!validate_trace(net_, instance_.initial, witness)) return false;
    GlobalState state = instance_.initial;
    for (const Step& step : witness) {
      state = apply_step(net_, state, step);
      for (LocalState c : cut) {
        if (state.contains(c)) return false;
      }
    }
    return state.contains(instance_.goal);
  }

  const SweepConfig& config_;
  const SweepInstance& instance_;
  const Network& net_;
  InstanceReport& report_;
  std::array<ReductionResult, 2> reductions_;
  Check current_ = Check::kMinimalTraces;
};

}  // namespace

SweepInstance make_instance(const SweepConfig& config, std::uint64_t seed) {
  GeneratorParams params = config.params;
  params.seed = seed;
  SweepInstance instance;
  instance.seed = seed;
  instance.network = random_network(params);
  const Network& net = instance.network;

  auto rng = instance_rng(seed, 0x1f4a);
  instance.initial = random_state(net, rng);
  std::vector<AutomatonIndex> movable;
  for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
    if (net.state_count(a) > 1) movable.push_back(a);
  }
  if (movable.empty()) throw Error("every automaton has a single state");
  const AutomatonIndex a = movable[draw(rng, 0, movable.size() - 1)];
  auto state = static_cast<StateIndex>(draw(rng, 0, net.state_count(a) - 2));
  if (state >= instance.initial[a]) ++state;
  instance.goal = {a, state};
  return instance;
}

std::vector<LocalStateSet> draw_cut_sets(const SweepInstance& instance,
                                         std::size_t count) {
  const Network& net = instance.network;
  LocalStateSet candidates;
  for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
    for (StateIndex s = 0; s < net.state_count(a); ++s) {
      const LocalState ls{a, s};
      if (!instance.initial.contains(ls) && ls != instance.goal) {
        candidates.push_back(ls);
      }
    }
  }
  auto rng = instance_rng(instance.seed, 0xc075);
  std::vector<LocalStateSet> cuts;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t size =
        draw(rng, 0, std::min<std::size_t>(3, candidates.size()));
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(candidates[i], candidates[draw(rng, i, candidates.size() - 1)]);
    }
    LocalStateSet cut(candidates.begin(), candidates.begin() + size);
    std::sort(cut.begin(), cut.end());
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

InstanceReport check_instance(const SweepConfig& config,
                              const SweepInstance& instance) {
  InstanceReport report;
  report.seed = instance.seed;
  InstanceChecker checker(config, instance, report);
  try {
    checker.run();
  } catch (const LimitReached&) {
    report.skipped = true;
  } catch (const std::exception& e) {
    checker.fail(std::string("error: ") + e.what());
  }
  return report;
}

SweepReport run_sweep(const SweepConfig& config) {
  std::vector<InstanceReport> reports(config.seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds; i = next++) {
      const std::uint64_t seed = config.first_seed + i;
      try {
        reports[i] = check_instance(config, make_instance(config, seed));
      } catch (const std::exception& e) {
        // The generator rejected the parameters.
        reports[i].seed = seed;
        ++reports[i].tally(Check::kMinimalTraces).violations;
        reports[i].messages.push_back(std::string("error: ") + e.what());
      }
    }
  };
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, config.seeds)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  constexpr std::size_t kMaxMessages = 20;
  SweepReport sweep;
  for (const InstanceReport& r : reports) {
    ++sweep.instances;
    if (r.skipped) ++sweep.skipped;
    sweep.minimal_traces += r.minimal_traces;
    for (std::size_t c = 0; c < kAllChecks.size(); ++c) {
      sweep.tallies[c].checked += r.tallies[c].checked;
      sweep.tallies[c].violations += r.tallies[c].violations;
      if (r.tallies[c].violations != 0) {
        sweep.failing_seeds[c].push_back(r.seed);
      }
    }
    for (const std::string& m : r.messages) {
      if (sweep.messages.size() < kMaxMessages) {
        sweep.messages.push_back("seed " + std::to_string(r.seed) + ": " + m);
      }
    }
  }
  return sweep;
}

}  // namespace anred
