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

#include "mcsterm/types.hpp"

#include <algorithm>
#include <set>

#include "mcsterm/verdict.hpp"

namespace mcsterm {

std::vector<Arc> Constraint::arcs() const {
  switch (op) {
    case RelOp::kGt:
      return {Arc{lhs, rhs, true}};
    case RelOp::kGe:
      return {Arc{lhs, rhs, false}};
    case RelOp::kLt:
      return {Arc{rhs, lhs, true}};
    case RelOp::kLe:
      return {Arc{rhs, lhs, false}};
    case RelOp::kEq:
      return {Arc{lhs, rhs, false}, Arc{rhs, lhs, false}};
  }
  return {};
}

std::string_view to_string(RelOp op) {
  switch (op) {
    case RelOp::kLt:
      return "<";
    case RelOp::kLe:
      return "<=";
    case RelOp::kEq:
      return "=";
    case RelOp::kGe:
      return ">=";
    case RelOp::kGt:
      return ">";
  }
  return "?";
}

void MonotonicityConstraint::add(const Arc& arc) {
  const int n = num_vars();
  if (arc.src.var < 0 || arc.src.var >= n || arc.dst.var < 0 ||
      arc.dst.var >= n) {
    throw std::out_of_range("arc endpoint outside the declared variables");
  }
  closed_ = false;
  arcs_.strengthen(node(arc.src), node(arc.dst),
                   arc.strict ? Rel::kGt : Rel::kGeq);
}

void MonotonicityConstraint::add(const Constraint& c) {
  for (const Arc& a : c.arcs()) add(a);
}

std::vector<Arc> MonotonicityConstraint::arc_list() const {
  std::vector<Arc> out;
  const int size = arcs_.size();
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      const Rel r = arcs_.at(a, b);
      if (r != Rel::kNone) out.push_back(Arc{term(a), term(b), r == Rel::kGt});
    }
  }
  return out;
}

std::optional<PointId> ConstraintSystem::find_point(
    std::string_view name) const {
  for (PointId p = 0; p < points.size(); ++p) {
    if (points[p].name == name) return p;
  }
  return std::nullopt;
}

std::optional<std::size_t> ConstraintSystem::find_mc(std::string_view id) const {
  for (std::size_t i = 0; i < mcs.size(); ++i) {
    if (mcs[i].id() == id) return i;
  }
  return std::nullopt;
}

std::string ConstraintSystem::term_name(Term t) const {
  std::string name = t.var >= 0 && t.var < num_vars()
                         ? var_names[t.var]
                         : "x" + std::to_string(t.var + 1);
  if (t.primed) name += '\'';
  return name;
}

std::vector<std::string> default_var_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

bool RankVector::well_formed(int num_vars) const {
  std::set<int> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const RankEntry& e = entries[i];
    if (e.weight < 0) return false;
    if (!e.var) {
      if (i + 1 != entries.size()) return false;
      continue;
    }
    if (*e.var < 0 || *e.var >= num_vars) return false;
    if (!seen.insert(*e.var).second) return false;
  }
  return true;
}

std::size_t RankVector::printed_length() const {
  std::size_t len = 0;
  for (const RankEntry& e : entries) len += e.var ? 2 : 1;
  return len;
}

std::string to_string(Result r) {
  return r == Result::kTerminating ? "terminating" : "non-terminating";
}

}  // namespace mcsterm
