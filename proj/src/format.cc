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

#include "anred/format.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

namespace anred {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(line == 0 ? message
                      : std::to_string(line) + ":" + std::to_string(column) +
                            ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class TokenKind { kName, kInt, kLBracket, kRBracket, kComma, kArrow,
                       kEquals, kRange, kSemicolon, kWhen, kAnd, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::uint32_t value = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};

const char* token_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kName: return "quoted name";
    case TokenKind::kInt: return "integer";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kComma: return "','";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kEquals: return "'='";
    case TokenKind::kRange: return "'..'";
    case TokenKind::kSemicolon: return "';'";
    case TokenKind::kWhen: return "'when'";
    case TokenKind::kAnd: return "'and'";
    case TokenKind::kEnd: return "end of line";
  }
  return "token";
}

// Tokenizes one logical line. `#` starts a comment outside quoted names.
class Lexer {
 public:
  Lexer(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  std::vector<Token> tokenize() {
    std::vector<Token> tokens;
    while (true) {
      skip_blank();
      Token tok;
      tok.line = line_number_;
      tok.column = pos_ + 1;
      if (pos_ >= line_.size() || line_[pos_] == '#') {
        tokens.push_back(tok);
        return tokens;
      }
      const char c = line_[pos_];
      if (c == '"') {
        const std::size_t close = line_.find('"', pos_ + 1);
        if (close == std::string_view::npos) {
          throw ParseError("unterminated name", tok.line, tok.column);
        }
        tok.kind = TokenKind::kName;
        tok.text = std::string(line_.substr(pos_ + 1, close - pos_ - 1));
        if (tok.text.empty()) {
          throw ParseError("empty name", tok.line, tok.column);
        }
        pos_ = close + 1;
      } else if (c >= '0' && c <= '9') {
        std::size_t end = pos_;
        while (end < line_.size() && line_[end] >= '0' && line_[end] <= '9') {
          ++end;
        }
        auto [ptr, ec] =
            std::from_chars(line_.data() + pos_, line_.data() + end, tok.value);
        if (ec != std::errc()) {
          throw ParseError("integer out of range", tok.line, tok.column);
        }
        tok.kind = TokenKind::kInt;
        pos_ = end;
      } else if (line_.substr(pos_, 2) == "->") {
        tok.kind = TokenKind::kArrow;
        pos_ += 2;
      } else if (line_.substr(pos_, 2) == "..") {
        tok.kind = TokenKind::kRange;
        pos_ += 2;
      } else if (c == '[' || c == ']' || c == ',' || c == '=' || c == ';') {
        tok.kind = c == '['   ? TokenKind::kLBracket
                   : c == ']' ? TokenKind::kRBracket
                   : c == ',' ? TokenKind::kComma
                   : c == '=' ? TokenKind::kEquals
                              : TokenKind::kSemicolon;
        ++pos_;
      } else if (is_word("when")) {
        tok.kind = TokenKind::kWhen;
        pos_ += 4;
      } else if (is_word("and")) {
        tok.kind = TokenKind::kAnd;
        pos_ += 3;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'",
                         tok.line, tok.column);
      }
      tokens.push_back(std::move(tok));
    }
  }

 private:
  void skip_blank() {
    while (pos_ < line_.size() &&
           (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool is_word(std::string_view word) const {
    if (line_.substr(pos_, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after >= line_.size()) return true;
    const char c = line_[after];
    return !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
             (c >= '0' && c <= '9') || c == '_');
  }

  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  Token next() {
    Token t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  Token expect(TokenKind kind) {
    if (!at(kind)) {
      throw ParseError(std::string("expected ") + token_name(kind) +
                           ", found " + token_name(peek().kind),
                       peek().line, peek().column);
    }
    return next();
  }
  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct RawCondition {
  Token automaton;
  Token state;
};

struct RawTransition {
  Token automaton;
  Token from;
  Token to;
  std::vector<RawCondition> conditions;
};

struct Resolver {
  const std::vector<Network::Automaton>& automata;
  const std::map<std::string, AutomatonIndex>& by_name;

  AutomatonIndex automaton(const Token& name) const {
    auto it = by_name.find(name.text);
    if (it == by_name.end()) {
      throw ParseError("undeclared automaton \"" + name.text + "\"", name.line,
                       name.column);
    }
    return it->second;
  }

  LocalState state(AutomatonIndex a, const Token& label) const {
    const auto& labels = automata[a].labels;
    auto it = std::find(labels.begin(), labels.end(), label.value);
    if (it == labels.end()) {
      throw ParseError("state " + std::to_string(label.value) +
                           " is not declared for automaton \"" +
                           automata[a].name + "\"",
                       label.line, label.column);
    }
    return {a, static_cast<StateIndex>(it - labels.begin())};
  }
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

LocalState resolve_assignment(TokenStream& ts, const Network& network) {
  const Token name = ts.expect(TokenKind::kName);
  const auto a = network.find_automaton(name.text);
  if (!a) {
    throw ParseError("unknown automaton \"" + name.text + "\"", name.line,
                     name.column);
  }
  ts.expect(TokenKind::kEquals);
  const Token label = ts.expect(TokenKind::kInt);
  const auto s = network.find_state(*a, label.value);
  if (!s) {
    throw ParseError("state " + std::to_string(label.value) +
                         " is not declared for automaton \"" + name.text + "\"",
                     label.line, label.column);
  }
  return {*a, *s};
}

// With `sets`, one automaton may appear with several states (cut sets).
LocalStateSet assignment_from(TokenStream& ts, const Network& network,
                              TokenKind terminator, bool sets = false) {
  LocalStateSet out;
  if (ts.at(terminator)) return out;
  while (true) {
    const Token& head = ts.peek();
    const LocalState ls = resolve_assignment(ts, network);
    for (LocalState prev : out) {
      if (sets ? prev == ls : prev.automaton == ls.automaton) {
        throw ParseError(sets ? network.describe(ls) + " listed twice"
                              : "automaton \"" + network.name(ls.automaton) +
                                    "\" assigned twice",
                         head.line, head.column);
      }
    }
    out.push_back(ls);
    if (!ts.accept(TokenKind::kComma)) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Specifications are single-line; newlines are treated as blanks.
TokenStream spec_tokens(std::string_view text) {
  std::string flat(text);
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  return TokenStream(Lexer(flat, 1).tokenize());
}

}  // namespace

Network parse_model(std::string_view text) {
  std::vector<Network::Automaton> automata;
  std::map<std::string, AutomatonIndex> by_name;
  std::vector<RawTransition> raw;

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    TokenStream ts(Lexer(lines[i], i + 1).tokenize());
    if (ts.at(TokenKind::kEnd)) continue;
    const Token name = ts.expect(TokenKind::kName);
    if (ts.accept(TokenKind::kLBracket)) {
      Network::Automaton decl{name.text, {}};
      do {
        const Token label = ts.expect(TokenKind::kInt);
        if (std::find(decl.labels.begin(), decl.labels.end(), label.value) !=
            decl.labels.end()) {
          throw ParseError("state " + std::to_string(label.value) +
                               " declared twice",
                           label.line, label.column);
        }
        decl.labels.push_back(label.value);
      } while (ts.accept(TokenKind::kComma));
      ts.expect(TokenKind::kRBracket);
      ts.expect(TokenKind::kEnd);
      if (by_name.count(name.text) != 0) {
        throw ParseError("automaton \"" + name.text + "\" declared twice",
                         name.line, name.column);
      }
      by_name.emplace(name.text, static_cast<AutomatonIndex>(automata.size()));
      automata.push_back(std::move(decl));
      continue;
    }
    RawTransition t;
    t.automaton = name;
    t.from = ts.expect(TokenKind::kInt);
    ts.expect(TokenKind::kArrow);
    t.to = ts.expect(TokenKind::kInt);
    if (ts.accept(TokenKind::kWhen)) {
      do {
        RawCondition c;
        c.automaton = ts.expect(TokenKind::kName);
        ts.expect(TokenKind::kEquals);
        c.state = ts.expect(TokenKind::kInt);
        t.conditions.push_back(std::move(c));
      } while (ts.accept(TokenKind::kAnd));
    }
    ts.expect(TokenKind::kEnd);
    raw.push_back(std::move(t));
  }

  if (automata.empty()) throw ParseError("no automata declared", 0, 0);

  const Resolver resolve{automata, by_name};
  std::vector<Transition> transitions;
  transitions.reserve(raw.size());
  for (const RawTransition& r : raw) {
    const AutomatonIndex a = resolve.automaton(r.automaton);
    Transition t{resolve.state(a, r.from), resolve.state(a, r.to), {}};
    if (t.origin == t.destination) {
      throw ParseError("self-loop transition", r.to.line, r.to.column);
    }
    for (const RawCondition& rc : r.conditions) {
      const AutomatonIndex b = resolve.automaton(rc.automaton);
      if (b == a) {
        throw ParseError("condition on own automaton", rc.automaton.line,
                         rc.automaton.column);
      }
      for (LocalState prev : t.condition) {
        if (prev.automaton == b) {
          throw ParseError(
              "automaton \"" + rc.automaton.text + "\" appears twice in a condition",
              rc.automaton.line, rc.automaton.column);
        }
      }
      t.condition.push_back(resolve.state(b, rc.state));
    }
    transitions.push_back(std::move(t));
  }

  std::map<Transition, std::size_t> seen;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    Transition key = transitions[i];
    std::sort(key.condition.begin(), key.condition.end());
    if (!seen.emplace(std::move(key), i).second) {
      throw ParseError("duplicate transition", raw[i].automaton.line,
                       raw[i].automaton.column);
    }
  }

  try {
    return Network(std::move(automata), std::move(transitions));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

Network parse_model(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return parse_model(std::string_view(text));
}

std::string serialize_model(const Network& network) {
  std::ostringstream os;
  for (const auto& a : network.automata()) {
    os << '"' << a.name << "\" [";
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      os << (i == 0 ? "" : ", ") << a.labels[i];
    }
    os << "]\n";
  }
  if (network.transition_count() > 0) os << '\n';
  for (const Transition& t : network.transitions()) {
    os << network.describe(t) << '\n';
  }
  return os.str();
}

GlobalState parse_state_spec(std::string_view text, const Network& network) {
  GlobalState state = GlobalState::zeros(network);
  for (LocalState ls : parse_assignment(text, network)) state.set(ls);
  return state;
}

LocalStateSet parse_assignment(std::string_view text, const Network& network) {
  TokenStream ts = spec_tokens(text);
  LocalStateSet out = assignment_from(ts, network, TokenKind::kEnd);
  ts.expect(TokenKind::kEnd);
  return out;
}

LocalStateSet parse_local_states(std::string_view text,
                                 const Network& network) {
  TokenStream ts = spec_tokens(text);
  LocalStateSet out = assignment_from(ts, network, TokenKind::kEnd, true);
  ts.expect(TokenKind::kEnd);
  return out;
}

std::vector<LocalStateSet> parse_stages(std::string_view text,
                                        const Network& network) {
  TokenStream ts = spec_tokens(text);
  std::vector<LocalStateSet> stages;
  do {
    const Token& head = ts.peek();
    LocalStateSet stage = assignment_from(ts, network, TokenKind::kSemicolon);
    if (stage.empty()) {
      throw ParseError("empty goal stage", head.line, head.column);
    }
    stages.push_back(std::move(stage));
  } while (ts.accept(TokenKind::kSemicolon));
  ts.expect(TokenKind::kEnd);
  return stages;
}

Objective parse_objective(std::string_view text, const Network& network) {
  TokenStream ts = spec_tokens(text);
  const LocalState from = resolve_assignment(ts, network);
  ts.expect(TokenKind::kRange);
  const Token label = ts.expect(TokenKind::kInt);
  ts.expect(TokenKind::kEnd);
  const auto to = network.find_state(from.automaton, label.value);
  if (!to) {
    throw ParseError("state " + std::to_string(label.value) +
                         " is not declared for automaton \"" +
                         network.name(from.automaton) + "\"",
                     label.line, label.column);
  }
  return {from, {from.automaton, *to}};
}

std::string format_assignment(const Network& network,
                              std::span<const LocalState> states) {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) out += ",";
    out += network.describe(states[i]);
  }
  return out;
}

}  // namespace anred
