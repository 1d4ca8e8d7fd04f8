// Copyright 2026 The mcsterm Authors
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

#include "mcsterm/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace mcsterm {

ParseError::ParseError(SourceSpan span, const std::string& message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
            message),
      span_(span),
      message_(message) {}

namespace {

enum class Tok {
  kIdent,
  kInt,
  kPrime,
  kLBrace,
  kRBrace,
  kComma,
  kArrow,
  kLt,
  kLe,
  kEq,
  kGe,
  kGt,
  kBar,
  kEnd
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)),
                   {line, col, static_cast<int>(len)}});
    i += len;
    col += static_cast<int>(len);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      // Generated names such as f@x<y=z carry an ordering after '@'.
      std::size_t j = i;
      bool extended = false;
      while (j < text.size()) {
        const char d = text[j];
        if (ident_char(d)) {
          ++j;
        } else if (d == '@') {
          extended = true;
          ++j;
        } else if (extended && (d == '<' || d == '=')) {
          ++j;
        } else {
          break;
        }
      }
      push(Tok::kIdent, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::kInt, j - i);
      continue;
    }
    const std::string_view rest = text.substr(i);
    if (rest.starts_with("->")) {
      push(Tok::kArrow, 2);
    } else if (rest.starts_with("<=")) {
      push(Tok::kLe, 2);
    } else if (rest.starts_with(">=")) {
      push(Tok::kGe, 2);
    } else if (c == '<') {
      push(Tok::kLt, 1);
    } else if (c == '>') {
      push(Tok::kGt, 1);
    } else if (c == '=') {
      push(Tok::kEq, 1);
    } else if (c == '\'') {
      push(Tok::kPrime, 1);
    } else if (c == '{') {
      push(Tok::kLBrace, 1);
    } else if (c == '}') {
      push(Tok::kRBrace, 1);
    } else if (c == ',') {
      push(Tok::kComma, 1);
    } else if (c == '|') {
      push(Tok::kBar, 1);
    } else {
      throw ParseError({line, col, 1}, "unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::kEnd, "", {line, col, 0}});
  return out;
}

std::optional<RelOp> rel_of(Tok t) {
  switch (t) {
    case Tok::kLt:
      return RelOp::kLt;
    case Tok::kLe:
      return RelOp::kLe;
    case Tok::kEq:
      return RelOp::kEq;
    case Tok::kGe:
      return RelOp::kGe;
    case Tok::kGt:
      return RelOp::kGt;
    default:
      return std::nullopt;
  }
}

const std::set<std::string, std::less<>> kKeywords = {"vars", "point", "inv", "mc",
                                                      "if",   "true",  "bound"};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::kIdent && peek().text == kw;
  }
  Token take() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  Token expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) {
      throw ParseError(peek().span,
                       "expected " + std::string(what) + ", found " + describe(peek()));
    }
    return take();
  }
  Token name(std::string_view what) {
    Token t = expect(Tok::kIdent, what);
    if (kKeywords.count(t.text)) {
      throw ParseError(t.span, "keyword '" + t.text + "' cannot be used as " +
                                   std::string(what));
    }
    return t;
  }

  // term := ident ["'"]
  std::pair<Term, SourceSpan> term(const std::vector<std::string>& vars) {
    const Token t = expect(Tok::kIdent, "a variable");
    const auto it = std::find(vars.begin(), vars.end(), t.text);
    if (it == vars.end()) {
      throw ParseError(t.span, "undeclared variable '" + t.text + "'");
    }
    Term out{static_cast<int>(it - vars.begin()), false};
    SourceSpan span = t.span;
    if (peek().kind == Tok::kPrime) {
      take();
      out.primed = true;
      ++span.length;
    }
    return {out, span};
  }

  RelOp rel() {
    const auto op = rel_of(peek().kind);
    if (!op) {
      throw ParseError(peek().span, "expected a relation (<, <=, =, >=, >), found " +
                                        describe(peek()));
    }
    take();
    return *op;
  }

  // '{' [c (',' c)*] '}'
  std::vector<std::pair<Constraint, SourceSpan>> constraint_block(
      const std::vector<std::string>& vars) {
    expect(Tok::kLBrace, "'{'");
    std::vector<std::pair<Constraint, SourceSpan>> out;
    if (peek().kind == Tok::kRBrace) {
      take();
      return out;
    }
    for (;;) {
      auto [lhs, lspan] = term(vars);
      const RelOp op = rel();
      auto [rhs, rspan] = term(vars);
      // Point at the primed side, if any, for invariant diagnostics.
      out.push_back({Constraint{lhs, op, rhs}, !lhs.primed && rhs.primed ? rspan : lspan});
      if (peek().kind == Tok::kComma) {
        take();
        continue;
      }
      expect(Tok::kRBrace, "',' or '}'");
      return out;
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Invariant canonical_invariant(const std::vector<Arc>& arcs) {
  std::map<std::pair<Term, Term>, bool> strongest;
  for (const Arc& a : arcs) {
    bool& strict = strongest[{a.src, a.dst}];
    strict = strict || a.strict;
  }
  Invariant out;
  for (const auto& [ends, strict] : strongest) {
    out.constraints.push_back({ends.first, ends.second, strict});
  }
  return out;
}

struct PendingMc {
  Token id;
  Token src;
  Token dst;
  std::vector<Constraint> constraints;
};

}  // namespace

ConstraintSystem parse_system(std::string_view text) {
  Parser p(text);
  ConstraintSystem cs;
  bool have_vars = false;
  std::vector<PendingMc> pending;
  std::map<std::string, SourceSpan, std::less<>> mc_ids;

  while (!p.at_end()) {
    if (p.at_keyword("vars")) {
      const Token kw = p.take();
      if (have_vars) throw ParseError(kw.span, "variables already declared");
      have_vars = true;
      while (p.peek().kind == Tok::kIdent && !kKeywords.count(p.peek().text)) {
        const Token v = p.take();
        if (std::find(cs.var_names.begin(), cs.var_names.end(), v.text) !=
            cs.var_names.end()) {
          throw ParseError(v.span, "duplicate variable '" + v.text + "'");
        }
        cs.var_names.push_back(v.text);
      }
      if (cs.var_names.empty()) {
        throw ParseError(p.peek().span, "expected at least one variable name");
      }
    } else if (p.at_keyword("point")) {
      p.take();
      const Token name = p.name("a point name");
      if (cs.find_point(name.text)) {
        throw ParseError(name.span, "duplicate point '" + name.text + "'");
      }
      std::vector<Arc> arcs;
      if (p.at_keyword("inv")) {
        p.take();
        for (const auto& [c, span] : p.constraint_block(cs.var_names)) {
          if (c.lhs.primed || c.rhs.primed) {
            throw ParseError(span, "primed term in invariant");
          }
          for (const Arc& a : c.arcs()) arcs.push_back(a);
        }
      }
      cs.points.push_back({name.text, canonical_invariant(arcs)});
    } else if (p.at_keyword("mc")) {
      p.take();
      PendingMc mc;
      mc.id = p.name("an MC name");
      if (mc_ids.count(mc.id.text)) {
        throw ParseError(mc.id.span, "duplicate MC '" + mc.id.text + "'");
      }
      mc_ids.emplace(mc.id.text, mc.id.span);
      mc.src = p.name("a source point");
      p.expect(Tok::kArrow, "'->'");
      mc.dst = p.name("a target point");
      for (const auto& [c, span] : p.constraint_block(cs.var_names)) {
        mc.constraints.push_back(c);
      }
      pending.push_back(std::move(mc));
    } else {
      throw ParseError(p.peek().span, "expected 'vars', 'point' or 'mc', found " +
                                          describe(p.peek()));
    }
  }
  if (!have_vars) throw ParseError(p.peek().span, "missing 'vars' declaration");

  for (const PendingMc& pm : pending) {
    const auto src = cs.find_point(pm.src.text);
    if (!src) throw ParseError(pm.src.span, "undeclared point '" + pm.src.text + "'");
    const auto dst = cs.find_point(pm.dst.text);
    if (!dst) throw ParseError(pm.dst.span, "undeclared point '" + pm.dst.text + "'");
    MonotonicityConstraint mc(pm.id.text, *src, *dst, cs.num_vars());
    for (const Constraint& c : pm.constraints) mc.add(c);
    cs.mcs.push_back(std::move(mc));
  }
  return cs;
}

namespace {

// One item per related pair (a, b), a < b, of a square relation matrix.
std::string format_pairs(const RelMatrix& m,
                         const std::vector<std::string>& node_names,
                         std::string_view sep) {
  std::vector<std::string> items;
  auto item = [&](int a, std::string_view op, int b) {
    items.push_back(node_names[a] + std::string(sep) + std::string(op) +
                    std::string(sep) + node_names[b]);
  };
  for (int a = 0; a < m.size(); ++a) {
    for (int b = a + 1; b < m.size(); ++b) {
      const Rel ab = m.at(a, b);
      const Rel ba = m.at(b, a);
      if (ab == Rel::kGeq && ba == Rel::kGeq) {
        item(a, "=", b);
        continue;
      }
      if (ab != Rel::kNone) item(a, ab == Rel::kGt ? ">" : ">=", b);
      if (ba != Rel::kNone) item(a, ba == Rel::kGt ? "<" : "<=", b);
    }
  }
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ", ";
    out += items[k];
  }
  return out + "}";
}

std::vector<std::string> node_names(const std::vector<std::string>& vars) {
  std::vector<std::string> out = vars;
  for (const std::string& v : vars) out.push_back(v + "'");
  return out;
}

}  // namespace

std::string format_mc(const MonotonicityConstraint& mc,
                      const std::vector<std::string>& var_names) {
  return format_pairs(mc.matrix(), node_names(var_names), "");
}

std::string format_invariant(const Invariant& inv,
                             const std::vector<std::string>& var_names) {
  RelMatrix m(static_cast<int>(var_names.size()));
  for (const Arc& a : inv.constraints) {
    if (a.src == a.dst) continue;
    m.strengthen(a.src.var, a.dst.var, a.strict ? Rel::kGt : Rel::kGeq);
  }
  return format_pairs(m, var_names, "");
}

std::string format_system(const ConstraintSystem& cs) {
  std::string out = "vars";
  for (const std::string& v : cs.var_names) out += " " + v;
  out += "\n";
  for (const FlowPoint& p : cs.points) {
    out += "point " + p.name;
    if (!p.invariant.trivial()) {
      out += " inv " + format_invariant(p.invariant, cs.var_names);
    }
    out += "\n";
  }
  for (const MonotonicityConstraint& mc : cs.mcs) {
    out += "mc " + mc.id() + " " + cs.points.at(mc.src_point()).name + " -> " +
           cs.points.at(mc.dst_point()).name + " " + format_mc(mc, cs.var_names) +
           "\n";
  }
  return out;
}

std::string format_vector(const RankVector& v,
                          const std::vector<std::string>& var_names) {
  std::string out = "<";
  for (std::size_t k = 0; k < v.entries.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(v.entries[k].weight);
    if (v.entries[k].var) out += ", " + var_names.at(*v.entries[k].var);
  }
  return out + ">";
}

std::string format_guard(const Guard& g, const std::vector<std::string>& var_names) {
  std::string out;
  for (std::size_t d = 0; d < g.disjuncts.size(); ++d) {
    if (d > 0) out += " | ";
    const auto& conj = g.disjuncts[d];
    if (conj.empty()) {
      out += "true";
      continue;
    }
    for (std::size_t k = 0; k < conj.size(); ++k) {
      const Constraint& c = conj[k];
      const bool continues = k > 0 && conj[k - 1].rhs == c.lhs;
      if (!continues) {
        if (k > 0) out += ", ";
        out += var_names.at(c.lhs.var);
      }
      out += " " + std::string(to_string(c.op)) + " " + var_names.at(c.rhs.var);
    }
  }
  return out.empty() ? "true" : out;
}

RankingFunction parse_ranking(std::string_view text, const ConstraintSystem& cs) {
  Parser p(text);
  RankingFunction out;
  out.rows.resize(cs.points.size());
  std::optional<std::int64_t> bound;
  std::vector<bool> seen(cs.points.size(), false);
  std::optional<PointId> current;

  auto unprimed = [&]() {
    auto [t, span] = p.term(cs.var_names);
    if (t.primed) throw ParseError(span, "primed term in guard");
    return t;
  };
  auto integer = [&]() {
    const Token t = p.expect(Tok::kInt, "an integer");
    try {
      return static_cast<std::int64_t>(std::stoll(t.text));
    } catch (const std::out_of_range&) {
      throw ParseError(t.span, "integer out of range");
    }
  };

  while (!p.at_end()) {
    if (p.at_keyword("bound")) {
      const Token kw = p.take();
      if (bound) throw ParseError(kw.span, "bound already given");
      bound = integer();
    } else if (p.at_keyword("point")) {
      p.take();
      const Token name = p.name("a point name");
      current = cs.find_point(name.text);
      if (!current) throw ParseError(name.span, "undeclared point '" + name.text + "'");
      if (seen[*current]) {
        throw ParseError(name.span, "duplicate point block '" + name.text + "'");
      }
      seen[*current] = true;
    } else if (p.at_keyword("if")) {
      const Token kw = p.take();
      if (!current) throw ParseError(kw.span, "row outside a point block");
      RankRow row;
      if (p.at_keyword("true")) {
        p.take();
        row.guard = Guard::always();
      } else {
        for (;;) {
          std::vector<Constraint> conj;
          for (;;) {
            Term lhs = unprimed();
            do {
              const RelOp op = p.rel();
              const Term rhs = unprimed();
              conj.push_back({lhs, op, rhs});
              lhs = rhs;
            } while (rel_of(p.peek().kind));
            if (p.peek().kind != Tok::kComma) break;
            p.take();
          }
          row.guard.disjuncts.push_back(std::move(conj));
          if (p.peek().kind != Tok::kBar) break;
          p.take();
        }
      }
      p.expect(Tok::kArrow, "'->'");
      p.expect(Tok::kLt, "'<'");
      if (p.peek().kind != Tok::kGt) {
        for (;;) {
          RankEntry e{integer(), std::nullopt};
          if (p.peek().kind == Tok::kComma && p.peek(1).kind == Tok::kIdent) {
            p.take();
            auto [t, span] = p.term(cs.var_names);
            if (t.primed) throw ParseError(span, "primed term in ranking vector");
            for (const RankEntry& prev : row.vector.entries) {
              if (prev.var == t.var) {
                throw ParseError(span, "variable '" + cs.var_names[t.var] +
                                           "' occurs twice in the vector");
              }
            }
            e.var = t.var;
          }
          row.vector.entries.push_back(e);
          if (p.peek().kind != Tok::kComma) break;
          const Token comma = p.take();
          if (!e.var) {
            throw ParseError(comma.span,
                             "only the last entry of a vector may omit its variable");
          }
        }
      }
      p.expect(Tok::kGt, "'>'");
      out.rows[*current].push_back(std::move(row));
    } else {
      throw ParseError(p.peek().span, "expected 'bound', 'point' or 'if', found " +
                                          describe(p.peek()));
    }
  }

  if (bound) {
    out.bound = *bound;
  } else {
    for (const auto& rows : out.rows) {
      for (const RankRow& r : rows) {
        for (const RankEntry& e : r.vector.entries) {
          out.bound = std::max(out.bound, e.weight);
        }
      }
    }
  }
  return out;
}

std::string format_ranking(const RankingFunction& r, const ConstraintSystem& cs) {
  std::string out = "bound " + std::to_string(r.bound) + "\n";
  for (PointId p = 0; p < r.rows.size(); ++p) {
    out += "point " + cs.points.at(p).name + "\n";
    for (const RankRow& row : r.rows[p]) {
      out += "  if " + format_guard(row.guard, cs.var_names) + " -> " +
             format_vector(row.vector, cs.var_names) + "\n";
    }
  }
  return out;
}

}  // namespace mcsterm
