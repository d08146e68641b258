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

#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "anred/causality.h"
#include "anred/format.h"
#include "anred/network.h"
#include "anred/oracle.h"
#include "anred/reach.h"
#include "anred/reduction.h"
#include "anred/sweep.h"

namespace anred::cli {

namespace {

constexpr std::string_view kSchema = "anred.report.v1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Report {
 public:
  void add(std::string key, std::string value) {
    lines_.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, const char* value) {
    add(std::move(key), std::string(value));
  }
  void add(std::string key, std::string_view value) {
    add(std::move(key), std::string(value));
  }
  void add(std::string key, bool value) {
    add(std::move(key), value ? "true" : "false");
  }
  void add(std::string key, std::size_t value) {
    add(std::move(key), std::to_string(value));
  }
  void timing(const std::string& phase, double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    add("timing." + phase + "_ms", os.str());
  }

  std::string str() const {
    std::string out;
    for (const auto& [key, value] : lines_) out += key + "=" + value + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Runs `parse`, reporting specification errors against the flag.
template <typename F>
auto parse_spec(std::string_view flag, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    std::string where(flag);
    if (e.column() != 0) where += ":" + std::to_string(e.column());
    throw UsageError(where + ": " + e.message());
  }
}

struct Options {
  std::string model;
  std::string initial;
  std::string goal;
  std::string cut;
  std::string objective;
  std::string output;
  std::string semantics = "async";
  bool no_filter = false;
  bool prune_isolated = false;
  bool witness = false;
  std::size_t max_states = Limits{}.max_states;
  std::size_t seeds = 500;
  std::size_t max_len = 6;
};

// A goal over the input network, possibly rewritten into a single local
// state of an extra automaton.
struct ResolvedGoal {
  Network network;
  GlobalState initial;
  LocalStateSet targets;
  std::optional<LocalState> single;
  bool encoded = false;
};

class Runner {
 public:
  Runner(const Options& options, std::istream& in, Report& report,
         std::ostream& err)
      : o_(options), in_(in), report_(report), err_(err) {}

  int reduce() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);
    const auto stages = parse_goal(net);
    const ResolvedGoal goal = resolve_goal(net, initial, stages, true);

    Stopwatch sw;
    const ReductionResult r = anred::reduce(goal.network, goal.initial,
                                            Goal{*goal.single}, !o_.no_filter);
    report_.timing("reduce", sw.ms());

    std::vector<TransitionId> kept;
    for (TransitionId id : r.kept) {
      const Transition& t = goal.network.transition(id);
      if (t.automaton() >= net.automaton_count()) continue;
      kept.push_back(*net.find_transition(t));
    }
    std::sort(kept.begin(), kept.end());
    Network reduced = net.restrict_to(kept);
    if (o_.prune_isolated) {
      LocalStateSet keep;
      for (const auto& stage : stages) {
        keep.insert(keep.end(), stage.begin(), stage.end());
      }
      reduced = prune_isolated(reduced, keep).first;
    }

    report_.add("filter", !o_.no_filter);
    report_.add("goal.encoded", goal.encoded);
    report_.add("trivially_satisfied", r.trivially_satisfied);
    report_.add("statically_refuted", r.statically_refuted);
    report_.add("objectives", r.objectives.size());
    report_.add("automata.before", net.automaton_count());
    report_.add("automata.after", reduced.automaton_count());
    report_.add("transitions.before", net.transition_count());
    report_.add("transitions.after", kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      report_.add("kept." + std::to_string(i + 1),
                  net.describe_transition(kept[i]));
    }
    if (!o_.output.empty()) {
      if (o_.output == "-") {
        throw UsageError("-o: standard output is reserved for the report");
      }
      std::ofstream file(o_.output);
      file << serialize_model(reduced);
      if (!file.flush()) throw Error("cannot write " + o_.output);
      report_.add("output", o_.output);
    }

    err_ << "reduce: " << net.transition_count() << " -> " << kept.size()
         << " transitions, " << r.objectives.size() << " objectives";
    if (r.trivially_satisfied) err_ << ", goal holds initially";
    if (r.statically_refuted) err_ << ", goal statically unreachable";
    err_ << '\n';
    return kExitOk;
  }

  int reach() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);
    const ResolvedGoal goal =
        resolve_goal(net, initial, parse_goal(net), false);
    const Semantics semantics = parse_semantics(o_.semantics);

    Stopwatch sw;
    const ReachResult r = reachable(goal.network, goal.initial, goal.targets,
                                    semantics, limits(), true);
    report_.timing("reach", sw.ms());

    report_.add("semantics", to_string(semantics));
    report_.add("goal.encoded", goal.encoded);
    report_verdict(r);
    if (r.witness) report_witness(goal.network, *r.witness, o_.witness);

    err_ << "reach: goal " << to_string(r.verdict);
    if (r.witness) err_ << " in " << r.witness->size() << " steps";
    err_ << " (" << r.states_explored << " states explored)\n";
    if (r.witness && o_.witness) {
      for (const Step& step : *r.witness) {
        err_ << "  " << describe(goal.network, step) << '\n';
      }
    }
    return r.verdict == Verdict::kInconclusive ? kExitInconclusive : kExitOk;
  }

  int count() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);
    const Semantics semantics = parse_semantics(o_.semantics);

    Stopwatch sw;
    const StateCount c = count_states(net, initial, semantics, limits());
    report_.timing("count", sw.ms());

    report_.add("semantics", to_string(semantics));
    report_.add("states", c.count);
    report_.add("complete", c.complete);
    err_ << "count: " << (c.complete ? "" : "at least ") << c.count
         << " reachable states\n";
    return c.complete ? kExitOk : kExitInconclusive;
  }

  int cutset() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);
    const ResolvedGoal goal =
        resolve_goal(net, initial, parse_goal(net), true);
    const LocalStateSet cut = parse_spec("--cut", [&] {
      return parse_local_states(o_.cut, net);
    });
    const Semantics semantics = parse_semantics(o_.semantics);
    report_.add("cut", format_assignment(net, cut));

    Stopwatch sw;
    const ReachResult r = verify_cut_set(goal.network, goal.initial,
                                         *goal.single, cut, semantics,
                                         limits());
    report_.timing("cutset", sw.ms());

    report_.add("semantics", to_string(semantics));
    const bool inconclusive = r.verdict == Verdict::kInconclusive;
    report_.add("cut_set", inconclusive                         ? "unknown"
                           : r.verdict == Verdict::kUnreachable ? "true"
                                                                : "false");
    report_verdict(r);
    if (r.witness) report_witness(goal.network, *r.witness, true);

    if (inconclusive) {
      err_ << "cutset: inconclusive, state limit reached\n";
      return kExitInconclusive;
    }
    if (r.reachable()) {
      err_ << "cutset: not a cut set, the goal is reached in "
           << r.witness->size() << " steps avoiding it\n";
      return kExitFalse;
    }
    err_ << "cutset: every trace to the goal goes through the cut set\n";
    return kExitOk;
  }

  int paths() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);
    const Objective objective = parse_spec("--objective", [&] {
      return parse_objective(o_.objective, net);
    });

    Stopwatch sw;
    const ValidityOracle omega = compute_valid(net, initial);
    const std::vector<LocalPath> all = local_paths(net, objective);
    const std::vector<LocalPath> kept =
        filtered_local_paths(net, &omega, objective);
    report_.timing("paths", sw.ms());

    report_.add("objective", describe(net, objective));
    report_.add("objective.valid", omega.is_valid(objective));
    report_.add("paths", all.size());
    report_.add("paths.kept", kept.size());
    err_ << "paths: " << describe(net, objective) << ", " << all.size()
         << " local paths, " << kept.size() << " with valid conditions\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
      const bool survives =
          std::find(kept.begin(), kept.end(), all[i]) != kept.end();
      std::vector<std::string> parts;
      for (TransitionId id : all[i]) parts.push_back(net.describe_transition(id));
      const std::string text = parts.empty() ? "(empty)" : join(parts, "; ");
      const std::string key = "path." + std::to_string(i + 1);
      report_.add(key, text);
      report_.add(key + ".kept", survives);
      err_ << (survives ? "  + " : "  - ") << text << '\n';
    }
    return kExitOk;
  }

  int valid() {
    const Network net = load_model();
    const GlobalState initial = initial_state(net);

    Stopwatch sw;
    const ValidityOracle omega = compute_valid(net, initial);
    report_.timing("valid", sw.ms());

    const ObjectiveIndex index(net);
    std::vector<std::string> valid;
    std::vector<std::string> invalid;
    for (std::size_t i = 0; i < index.size(); ++i) {
      const Objective o = index.objective(i);
      if (o.from == o.to) continue;
      (omega.is_valid(o) ? valid : invalid).push_back(describe(net, o));
    }
    report_.add("objectives", index.size());
    report_.add("valid", omega.valid_count());
    report_.add("invalid", invalid.size());
    for (std::size_t i = 0; i < valid.size(); ++i) {
      report_.add("valid." + std::to_string(i + 1), valid[i]);
    }
    for (std::size_t i = 0; i < invalid.size(); ++i) {
      report_.add("invalid." + std::to_string(i + 1), invalid[i]);
    }
    err_ << "valid: " << omega.valid_count() << " of " << index.size()
         << " objectives valid (reflexive ones included)\n";
    for (const std::string& text : invalid) err_ << "  invalid " << text << '\n';
    return kExitOk;
  }

  int oracle() {
    SweepConfig config;
    config.seeds = o_.seeds;
    config.max_len = o_.max_len;

    Stopwatch sw;
    const SweepReport sweep = run_sweep(config);
    report_.timing("oracle", sw.ms());

    report_.add("seeds", config.seeds);
    report_.add("max_len", config.max_len);
    report_.add("instances", sweep.instances);
    report_.add("skipped", sweep.skipped);
    report_.add("minimal_traces", sweep.minimal_traces);
    for (Check c : kAllChecks) {
      const std::string key = "check." + std::string(to_string(c));
      report_.add(key + ".checked", sweep.tally(c).checked);
      report_.add(key + ".violations", sweep.tally(c).violations);
      std::vector<std::string> seeds;
      for (std::uint64_t s : sweep.failing(c)) seeds.push_back(std::to_string(s));
      if (!seeds.empty()) report_.add(key + ".failing_seeds", join(seeds, ","));
      err_ << "oracle: " << to_string(c) << ": " << sweep.tally(c).checked
           << " checked, " << sweep.tally(c).violations << " violations\n";
    }
    report_.add("violations", sweep.violations());
    for (std::size_t i = 0; i < sweep.messages.size(); ++i) {
      report_.add("message." + std::to_string(i + 1), sweep.messages[i]);
      err_ << "  " << sweep.messages[i] << '\n';
    }
    if (sweep.violations() != 0) return kExitFalse;
    return sweep.skipped != 0 ? kExitInconclusive : kExitOk;
  }

  int stats() {
    const Network net = load_model();
    std::size_t max_condition = 0;
    std::size_t conditioned = 0;
    for (const Transition& t : net.transitions()) {
      max_condition = std::max(max_condition, t.condition.size());
      if (!t.condition.empty()) ++conditioned;
    }
    report_.add("automata", net.automaton_count());
    report_.add("local_states", net.local_state_count());
    report_.add("states.max", net.max_state_count());
    report_.add("transitions", net.transition_count());
    report_.add("transitions.conditioned", conditioned);
    report_.add("conditions.max", max_condition);
    report_.add("objectives", ObjectiveIndex(net).size());
    err_ << "stats: " << net.automaton_count() << " automata, "
         << net.local_state_count() << " local states, "
         << net.transition_count() << " transitions\n";
    return kExitOk;
  }

 private:
  Limits limits() const { return Limits{o_.max_states, 0}; }

  Network load_model() {
    Stopwatch sw;
    std::string text;
    if (o_.model == "-") {
      text.assign(std::istreambuf_iterator<char>(in_),
                  std::istreambuf_iterator<char>());
    } else {
      std::ifstream file(o_.model, std::ios::binary);
      if (!file) throw UsageError("cannot open model " + o_.model);
      text.assign(std::istreambuf_iterator<char>(file),
                  std::istreambuf_iterator<char>());
    }
    report_.add("model", o_.model);
    report_.add("model.sha256", sha256_hex(text));
    try {
      Network net = parse_model(text);
      report_.timing("parse", sw.ms());
      return net;
    } catch (const ParseError& e) {
      const std::string where =
          e.line() == 0 ? o_.model
                        : o_.model + ":" + std::to_string(e.line()) + ":" +
                              std::to_string(e.column());
      throw UsageError(where + ": " + e.message());
    }
  }

  GlobalState initial_state(const Network& net) {
    GlobalState s = parse_spec("--initial", [&] {
      return parse_state_spec(o_.initial, net);
    });
    std::vector<LocalState> all;
    for (AutomatonIndex a = 0; a < net.automaton_count(); ++a) {
      all.push_back(s.local(a));
    }
    report_.add("initial", format_assignment(net, all));
    return s;
  }

  std::vector<LocalStateSet> parse_goal(const Network& net) {
    auto stages =
        parse_spec("--goal", [&] { return parse_stages(o_.goal, net); });
    std::vector<std::string> parts;
    for (const auto& stage : stages) parts.push_back(format_assignment(net, stage));
    report_.add("goal", join(parts, ";"));
    return stages;
  }

  static ResolvedGoal resolve_goal(const Network& net,
                                   const GlobalState& initial,
                                   const std::vector<LocalStateSet>& stages,
                                   bool need_single) {
    ResolvedGoal goal;
    if (stages.size() == 1 && (stages[0].size() == 1 || !need_single)) {
      goal.network = net;
      goal.initial = initial;
      goal.targets = stages[0];
      if (stages[0].size() == 1) goal.single = stages[0][0];
      return goal;
    }
    std::string name = "goal";
    for (int k = 1; net.find_automaton(name); ++k) {
      name = "goal_" + std::to_string(k);
    }
    auto [extended, target] = encode_sequential_goal(net, stages, name);
    std::vector<StateIndex> values(initial.values().begin(),
                                   initial.values().end());
    values.push_back(0);
    goal.network = std::move(extended);
    goal.initial = GlobalState(std::move(values));
    goal.targets = {target.target};
    goal.single = target.target;
    goal.encoded = true;
    return goal;
  }

  void report_verdict(const ReachResult& r) {
    report_.add("verdict", to_string(r.verdict));
    if (r.verdict != Verdict::kInconclusive) {
      report_.add("reachable", r.reachable());
    }
    report_.add("states_explored", r.states_explored);
    report_.add("frontier_peak", r.frontier_peak);
  }

  void report_witness(const Network& net, const Trace& witness, bool steps) {
    report_.add("witness.length", witness.size());
    if (!steps) return;
    for (std::size_t i = 0; i < witness.size(); ++i) {
      report_.add("witness." + std::to_string(i + 1), describe(net, witness[i]));
    }
  }

  const Options& o_;
  std::istream& in_;
  Report& report_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Goal-oriented reduction of automata networks.", "anred"};
  app.require_subcommand(1);

  auto model = [&o](CLI::App* sub) {
    sub->add_option("-m,--model", o.model, "Model file (.an), - for stdin")
        ->required();
  };
  auto initial = [&o](CLI::App* sub) {
    sub->add_option("--initial", o.initial,
                    "Initial state, e.g. '\"a\"=0,\"b\"=1'; unlisted "
                    "automata start in their first state");
  };
  auto goal = [&o](CLI::App* sub) {
    sub->add_option("--goal", o.goal,
                    "Goal assignment; ';' separates sequential stages")
        ->required();
  };
  auto engine = [&o](CLI::App* sub) {
    sub->add_option("--semantics", o.semantics, "async or step")
        ->check(CLI::IsMember({"async", "step"}));
    sub->add_option("--max-states", o.max_states,
                    "Exploration limit; hitting it is inconclusive")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* reduce = app.add_subcommand(
      "reduce", "Remove transitions taking part in no minimal trace");
  model(reduce);
  initial(reduce);
  goal(reduce);
  reduce->add_flag("--no-filter", o.no_filter,
                   "Keep local paths with statically unreachable conditions");
  reduce->add_flag("--prune-isolated", o.prune_isolated,
                   "Drop automata untouched by the reduced network");
  reduce->add_option("-o", o.output, "Write the reduced model here");

  CLI::App* reach = app.add_subcommand("reach", "Decide goal reachability");
  model(reach);
  initial(reach);
  goal(reach);
  engine(reach);
  reach->add_flag("--witness", o.witness, "List the steps of the witness");

  CLI::App* count = app.add_subcommand("count", "Count reachable states");
  model(count);
  initial(count);
  engine(count);

  CLI::App* cutset =
      app.add_subcommand("cutset", "Check that a set of local states is a cut set");
  model(cutset);
  initial(cutset);
  goal(cutset);
  engine(cutset);
  cutset->add_option("--cut", o.cut, "Local states, e.g. '\"a\"=1,\"a\"=2'")
      ->required();

  CLI::App* paths =
      app.add_subcommand("paths", "List the local paths of an objective");
  model(paths);
  initial(paths);
  paths->add_option("--objective", o.objective, "Objective, e.g. '\"c\"=0..2'")
      ->required();

  CLI::App* valid =
      app.add_subcommand("valid", "List objectives rejected by the static filter");
  model(valid);
  initial(valid);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Check the reduction against brute force on random networks");
  oracle->add_option("--seeds", o.seeds, "Number of seeds, starting at 1")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--max-len", o.max_len, "Longest enumerated trace")
      ->check(CLI::PositiveNumber);

  CLI::App* stats = app.add_subcommand("stats", "Summarize a model");
  model(stats);

  Report report;
  report.add("schema", kSchema);
  report.add("args", join(args, " "));

  auto finish = [&](int code) {
    report.add("exit_code", std::to_string(code));
    out << report.str();
    out.flush();
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help: the help text is the only output.
      return app.exit(e, out, err);
    }
    err << "anred: " << e.what() << '\n';
    report.add("error", e.what());
    return finish(kExitUsage);
  }

  const std::vector<CLI::App*> chosen = app.get_subcommands();
  const std::string name = chosen.front()->get_name();
  report.add("command", name);
  Runner runner(o, in, report, err);
  try {
    int code = kExitOk;
    if (name == "reduce") code = runner.reduce();
    if (name == "reach") code = runner.reach();
    if (name == "count") code = runner.count();
    if (name == "cutset") code = runner.cutset();
    if (name == "paths") code = runner.paths();
    if (name == "valid") code = runner.valid();
    if (name == "oracle") code = runner.oracle();
    if (name == "stats") code = runner.stats();
    return finish(code);
  } catch (const std::exception& e) {
    err << "anred " << name << ": " << e.what() << '\n';
    report.add("error", e.what());
    return finish(kExitUsage);
  }
}

std::string canonical_report(const std::string& report) {
  std::istringstream in(report);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("timing.", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

}  // namespace anred::cli
