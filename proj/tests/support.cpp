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

#include "support.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcsterm/dsl.hpp"

namespace mcsterm::testing {

MonotonicityConstraint mc_of(int n, std::string_view body) {
  return loop_system(n, {std::string(body)}).mcs.at(0);
}

ConstraintSystem loop_system(int n, const std::vector<std::string>& bodies) {
  std::string text = "vars";
  for (int i = 1; i <= n; ++i) text += " x" + std::to_string(i);
  text += "\npoint f\n";
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    text += "mc g" + std::to_string(k + 1) + " f -> f { " + bodies[k] + " }\n";
  }
  return parse_system(text);
}

std::optional<RelMatrix> ref_closure(const RelMatrix& arcs) {
  const int size = arcs.size();
  RelMatrix out(size);
  for (int a = 0; a < size; ++a) {
    // seen[v][s]: v reached, s = some strict arc on the way.
    std::vector<std::vector<bool>> seen(size, std::vector<bool>(2, false));
    std::vector<std::pair<int, int>> stack = {{a, 0}};
    seen[a][0] = true;
    while (!stack.empty()) {
      auto [v, s] = stack.back();
      stack.pop_back();
      for (int w = 0; w < size; ++w) {
        const Rel r = arcs.at(v, w);
        if (r == Rel::kNone) continue;
        const int t = (s == 1 || r == Rel::kGt) ? 1 : 0;
        if (!seen[w][t]) {
          seen[w][t] = true;
          stack.push_back({w, t});
        }
      }
    }
    if (seen[a][1]) return std::nullopt;
    for (int b = 0; b < size; ++b) {
      if (b == a) continue;
      if (seen[b][1]) {
        out.set(a, b, Rel::kGt);
      } else if (seen[b][0]) {
        out.set(a, b, Rel::kGeq);
      }
    }
  }
  return out;
}

namespace {

void put(RelMatrix& m, const Arc& a, int src_offset, int dst_offset) {
  const int from = a.src.var + (a.src.primed ? dst_offset : src_offset);
  const int to = a.dst.var + (a.dst.primed ? dst_offset : src_offset);
  m.strengthen(from, to, a.strict ? Rel::kGt : Rel::kGeq);
}

void put_invariant(RelMatrix& m, const Invariant& inv, int offset) {
  for (const Arc& a : inv.constraints) put(m, a, offset, offset);
}

}  // namespace

std::optional<RelMatrix> ref_close(const MonotonicityConstraint& g,
                                   const Invariant& src, const Invariant& dst) {
  const int n = g.num_vars();
  RelMatrix m(2 * n);
  for (const Arc& a : g.arc_list()) put(m, a, 0, n);
  put_invariant(m, src, 0);
  put_invariant(m, dst, n);
  return ref_closure(m);
}

std::optional<RelMatrix> ref_compose(const MonotonicityConstraint& g1,
                                     const MonotonicityConstraint& g2,
                                     const Invariant& mid) {
  const int n = g1.num_vars();
  // Layers: source 0..n-1, target n..2n-1, middle 2n..3n-1.
  RelMatrix m(3 * n);
  for (const Arc& a : g1.arc_list()) put(m, a, 0, 2 * n);
  for (const Arc& a : g2.arc_list()) put(m, a, 2 * n, n);
  put_invariant(m, mid, 2 * n);
  const std::optional<RelMatrix> full = ref_closure(m);
  if (!full) return std::nullopt;
  RelMatrix out(2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = 0; b < 2 * n; ++b) out.set(a, b, full->at(a, b));
  }
  return out;
}

bool holds(const MonotonicityConstraint& g, const Values& src, const Values& dst) {
  for (const Arc& a : g.arc_list()) {
    const std::int64_t l = a.src.primed ? dst[a.src.var] : src[a.src.var];
    const std::int64_t r = a.dst.primed ? dst[a.dst.var] : src[a.dst.var];
    if (a.strict ? !(l > r) : !(l >= r)) return false;
  }
  return true;
}

bool holds(const Invariant& inv, const Values& v) {
  for (const Arc& a : inv.constraints) {
    const std::int64_t l = v[a.src.var];
    const std::int64_t r = v[a.dst.var];
    if (a.strict ? !(l > r) : !(l >= r)) return false;
  }
  return true;
}

bool holds(const std::vector<Constraint>& conj, const Values& v) {
  for (const Constraint& c : conj) {
    const std::int64_t l = v[c.lhs.var];
    const std::int64_t r = v[c.rhs.var];
    bool ok = false;
    switch (c.op) {
      case RelOp::kLt: ok = l < r; break;
      case RelOp::kLe: ok = l <= r; break;
      case RelOp::kEq: ok = l == r; break;
      case RelOp::kGe: ok = l >= r; break;
      case RelOp::kGt: ok = l > r; break;
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<Values> all_states(int n, int domain) {
  std::vector<Values> out;
  Values v(n, 0);
  for (;;) {
    out.push_back(v);
    int k = n - 1;
    while (k >= 0 && v[k] == domain) v[k--] = 0;
    if (k < 0) return out;
    ++v[k];
  }
}

std::size_t bell_recurrence(int n) {
  std::vector<std::size_t> b(n + 1, 0);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::size_t binom = 1;  // C(m, k)
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      b[m] += binom * b[m - k];
    }
  }
  return b[n];
}

std::size_t count_weak_orders(int n) {
  std::size_t count = 0;
  for (const Values& v : all_states(n, n - 1)) {
    const std::int64_t top = *std::max_element(v.begin(), v.end());
    bool onto = true;
    for (std::int64_t k = 0; k <= top && onto; ++k) {
      onto = std::find(v.begin(), v.end(), k) != v.end();
    }
    if (onto) ++count;
  }
  return count;
}

namespace {

std::optional<Values> rank_value(const RankingFunction& r, PointId p,
                                 const Values& v) {
  std::optional<Values> out;
  for (const RankRow& row : r.rows.at(p)) {
    const bool match = std::any_of(
        row.guard.disjuncts.begin(), row.guard.disjuncts.end(),
        [&](const std::vector<Constraint>& d) { return holds(d, v); });
    if (!match) continue;
    if (out) return std::nullopt;  // overlapping rows
    Values tuple;
    for (const RankEntry& e : row.vector.entries) {
      tuple.push_back(e.weight);
      tuple.push_back(e.var ? v[*e.var] : -1);
    }
    out = tuple;
  }
  return out;
}

bool lex_greater(Values a, Values b) {
  const std::size_t len = std::max(a.size(), b.size());
  while (a.size() < len) {
    a.push_back(0);
    a.push_back(-1);
  }
  while (b.size() < len) {
    b.push_back(0);
    b.push_back(-1);
  }
  return a > b;
}

}  // namespace

bool ref_numeric_valid(const ConstraintSystem& cs, const RankingFunction& r,
                       int domain) {
  const std::vector<Values> states = all_states(cs.num_vars(), domain);
  for (const MonotonicityConstraint& g : cs.mcs) {
    const Invariant& src_inv = cs.points[g.src_point()].invariant;
    const Invariant& dst_inv = cs.points[g.dst_point()].invariant;
    for (const Values& s : states) {
      if (!holds(src_inv, s)) continue;
      for (const Values& t : states) {
        if (!holds(dst_inv, t) || !holds(g, s, t)) continue;
        const std::optional<Values> a = rank_value(r, g.src_point(), s);
        const std::optional<Values> b = rank_value(r, g.dst_point(), t);
        if (!a || !b || !lex_greater(*a, *b)) return false;
      }
    }
  }
  return true;
}

bool Gen::coin(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

int Gen::below(int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng_); }

MonotonicityConstraint Gen::mc(std::string id, PointId src, PointId dst, int n,
                               double density) {
  MonotonicityConstraint g(std::move(id), src, dst, n);
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = 0; b < 2 * n; ++b) {
      if (a == b || !coin(density)) continue;
      g.add(Arc{g.term(a), g.term(b), coin(0.5)});
    }
  }
  return g;
}

Invariant Gen::invariant(int n, double density) {
  Invariant inv;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !coin(density)) continue;
      inv.constraints.push_back(Arc{{a, false}, {b, false}, coin(0.5)});
    }
  }
  return inv;
}

ConstraintSystem Gen::system(int n, int points, int mcs, double density,
                             double invariant_density) {
  ConstraintSystem cs;
  cs.var_names = default_var_names(n);
  for (int p = 0; p < points; ++p) {
    cs.points.push_back({"p" + std::to_string(p + 1), invariant(n, invariant_density)});
  }
  for (int k = 0; k < mcs; ++k) {
    const PointId src = below(points);
    const PointId dst = below(points);
    cs.mcs.push_back(mc("m" + std::to_string(k + 1), src, dst, n, density));
  }
  return cs;
}

}  // namespace mcsterm::testing
