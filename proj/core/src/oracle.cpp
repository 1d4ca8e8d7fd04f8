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

#include "mcsterm/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "mcsterm/closure.hpp"
#include "mcsterm/elaboration.hpp"

namespace mcsterm {

std::size_t default_max_len(int num_vars) {
  const std::size_t nodes = 2 * static_cast<std::size_t>(num_vars);
  return 2 * nodes * nodes;
}

bool ltt_bruteforce(const MonotonicityConstraint& g, std::size_t max_len) {
  const int n = g.num_vars();
  const int nodes = 2 * n;
  const long len = static_cast<long>(max_len == 0 ? default_max_len(n) : max_len);

  struct Step {
    int to;
    int delta;
    bool strict;
  };
  std::vector<std::vector<Step>> out(nodes);
  for (int a = 0; a < nodes; ++a) {
    for (int b = 0; b < nodes; ++b) {
      if (a != b && g.rel(a, b) != Rel::kNone) {
        out[a].push_back({b, 0, g.rel(a, b) == Rel::kGt});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    out[i].push_back({n + i, 1, false});
    out[n + i].push_back({i, -1, false});
  }

  // State (node, balance + len, descended); distance = walk length.
  const long width = 2 * len + 1;
  auto index = [&](int node, long bal, bool desc) {
    return (static_cast<long>(node) * width + bal + len) * 2 + (desc ? 1 : 0);
  };
  for (int start = 0; start < nodes; ++start) {
    std::vector<int> dist(static_cast<std::size_t>(nodes) * width * 2, -1);
    struct State {
      int node;
      long bal;
      bool desc;
    };
    std::deque<State> queue{{start, 0, false}};
    dist[index(start, 0, false)] = 0;
    while (!queue.empty()) {
      const State s = queue.front();
      queue.pop_front();
      const int d = dist[index(s.node, s.bal, s.desc)];
      if (d >= len) continue;
      for (const Step& e : out[s.node]) {
        const State t{e.to, s.bal + e.delta, s.desc || e.strict};
        if (t.node == start && t.desc && t.bal <= 0) return true;
        if (t.bal < -len || t.bal > len) continue;
        int& seen = dist[index(t.node, t.bal, t.desc)];
        if (seen != -1) continue;
        seen = d + 1;
        queue.push_back(t);
      }
    }
  }
  return false;
}

bool satisfiable_power(const MonotonicityConstraint& g, int k) {
  if (k < 1) throw std::invalid_argument("satisfiable_power: k must be >= 1");
  const int n = g.num_vars();
  const int nodes = (k + 1) * n;
  struct Edge {
    int from;
    int to;
    int w;
  };
  std::vector<Edge> edges;
  for (int layer = 0; layer < k; ++layer) {
    auto place = [&](int node) {
      return node < n ? layer * n + node : (layer + 1) * n + node - n;
    };
    for (int a = 0; a < 2 * n; ++a) {
      for (int b = 0; b < 2 * n; ++b) {
        const Rel r = g.rel(a, b);
        if (a == b || r == Rel::kNone) continue;
        edges.push_back({place(a), place(b), r == Rel::kGt ? -1 : 0});
      }
    }
  }
  std::vector<long> dist(nodes, 0);
  for (int round = 0; round < nodes; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      if (dist[e.from] + e.w < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.w;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

bool SymbolicReport::valid() const {
  return std::all_of(mcs.begin(), mcs.end(), [](const McCheck& c) { return c.ok; });
}

namespace {

Invariant conjunction(const std::vector<Constraint>& cs) {
  Invariant out;
  for (const Constraint& c : cs) {
    for (Arc a : c.arcs()) {
      if (a.src.primed || a.dst.primed) {
        throw GuardError("guard mentions a primed variable");
      }
      out.constraints.push_back(a);
    }
  }
  return out;
}

Invariant conjoin(Invariant a, const Invariant& b) {
  a.constraints.insert(a.constraints.end(), b.constraints.begin(),
                       b.constraints.end());
  return a;
}

// Whether the closed constraint g forces v(source) > w(target).
bool descends(MonotonicityConstraint g, const RankVector& v, const RankVector& w) {
  const int n = g.num_vars();
  const std::size_t len = std::max(v.entries.size(), w.entries.size());
  const RankEntry pad{0, std::nullopt};
  for (std::size_t k = 0; k < len; ++k) {
    const RankEntry& l = k < v.entries.size() ? v.entries[k] : pad;
    const RankEntry& r = k < w.entries.size() ? w.entries[k] : pad;
    if (l.weight != r.weight) return l.weight > r.weight;
    if (!l.var && !r.var) continue;
    if (!l.var) return false;
    if (!r.var) return true;
    if (*l.var < 0 || *l.var >= n || *r.var < 0 || *r.var >= n) {
      throw std::out_of_range("ranking vector names an undeclared variable");
    }
    const Term a{*l.var, false};
    const Term b{*r.var, true};
    if (entails(g, Arc{a, b, true})) return true;
    if (!entails(g, Arc{a, b, false})) return false;
    // a >= b: the a > b part descends here; continue with a = b.
    g.add(Arc{b, a, false});
    auto tightened = close(g);
    if (!tightened) return true;
    g = std::move(*tightened);
  }
  return false;
}

bool holds(const Arc& a, const std::vector<std::int64_t>& s,
           const std::vector<std::int64_t>& t) {
  const std::int64_t l = a.src.primed ? t[a.src.var] : s[a.src.var];
  const std::int64_t r = a.dst.primed ? t[a.dst.var] : s[a.dst.var];
  return a.strict ? l > r : l >= r;
}

bool holds(const Invariant& inv, const std::vector<std::int64_t>& s) {
  return std::all_of(inv.constraints.begin(), inv.constraints.end(),
                     [&](const Arc& a) { return holds(a, s, s); });
}

bool guard_holds(const Guard& g, const std::vector<std::int64_t>& s) {
  for (const auto& d : g.disjuncts) {
    bool ok = true;
    for (const Constraint& c : d) {
      for (const Arc& a : c.arcs()) ok = ok && holds(a, s, s);
    }
    if (ok) return true;
  }
  return false;
}

// Tuple for lexicographic comparison; a missing variable reads as -1, below
// every domain value.
std::vector<std::int64_t> evaluate(const RankVector& v,
                                   const std::vector<std::int64_t>& s,
                                   std::size_t len) {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < len; ++k) {
    if (k < v.entries.size()) {
      out.push_back(v.entries[k].weight);
      out.push_back(v.entries[k].var ? s.at(*v.entries[k].var) : -1);
    } else {
      out.push_back(0);
      out.push_back(-1);
    }
  }
  return out;
}

}  // namespace

void check_guards(const ConstraintSystem& cs, const RankingFunction& ranking) {
  const int n = cs.num_vars();
  if (ranking.rows.size() != cs.points.size()) {
    throw GuardError("ranking covers " + std::to_string(ranking.rows.size()) +
                     " points, system has " + std::to_string(cs.points.size()));
  }
  const std::vector<Ordering> orders = enumerate_orderings(n);
  const std::vector<std::string>& names = cs.var_names;
  for (PointId p = 0; p < cs.points.size(); ++p) {
    for (const Ordering& o : orders) {
      const Invariant region = conjoin(cs.points[p].invariant, o.invariant());
      if (!satisfiable(region, n)) continue;
      std::size_t matching = 0;
      for (const RankRow& row : ranking.rows[p]) {
        const bool hit = std::any_of(
            row.guard.disjuncts.begin(), row.guard.disjuncts.end(),
            [&](const auto& d) {
              return satisfiable(conjoin(region, conjunction(d)), n);
            });
        if (hit) ++matching;
      }
      if (matching == 0) {
        throw GuardError("guards of point " + cs.points[p].name +
                         " do not cover " + format_ordering(o, names));
      }
      if (matching > 1) {
        throw GuardError("guards of point " + cs.points[p].name +
                         " overlap on " + format_ordering(o, names));
      }
    }
  }
}

SymbolicReport verify_ranking_symbolic(const ConstraintSystem& cs,
                                       const RankingFunction& ranking) {
  check_guards(cs, ranking);
  SymbolicReport report;
  for (const MonotonicityConstraint& mc : cs.mcs) {
    McCheck check;
    check.mc_id = mc.id();
    const auto& src_rows = ranking.rows[mc.src_point()];
    const auto& dst_rows = ranking.rows[mc.dst_point()];
    for (std::size_t r1 = 0; r1 < src_rows.size() && check.ok; ++r1) {
      for (std::size_t r2 = 0; r2 < dst_rows.size() && check.ok; ++r2) {
        for (const auto& d1 : src_rows[r1].guard.disjuncts) {
          for (const auto& d2 : dst_rows[r2].guard.disjuncts) {
            auto g = close(mc,
                           conjoin(cs.points[mc.src_point()].invariant,
                                   conjunction(d1)),
                           conjoin(cs.points[mc.dst_point()].invariant,
                                   conjunction(d2)));
            if (!g) continue;
            ++check.cases;
            if (!descends(std::move(*g), src_rows[r1].vector, dst_rows[r2].vector)) {
              check.ok = false;
              check.src_row = r1;
              check.dst_row = r2;
            }
            if (!check.ok) break;
          }
          if (!check.ok) break;
        }
      }
    }
    report.mcs.push_back(std::move(check));
  }
  return report;
}

std::optional<std::size_t> select_row(const RankingFunction& ranking, PointId p,
                                      const std::vector<std::int64_t>& values) {
  const auto& rows = ranking.rows.at(p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (guard_holds(rows[r].guard, values)) return r;
  }
  return std::nullopt;
}

NumericReport verify_ranking_numeric(const ConstraintSystem& cs,
                                     const RankingFunction& ranking, int domain,
                                     std::size_t budget) {
  if (domain < 1) throw std::invalid_argument("domain size must be >= 1");
  const int n = cs.num_vars();
  if (ranking.rows.size() != cs.points.size()) {
    throw GuardError("ranking does not cover every point");
  }

  // All assignments over {0..domain}^n.
  std::vector<std::vector<std::int64_t>> states;
  double total = 1;
  for (int i = 0; i < n; ++i) total *= domain + 1;
  if (total * total * static_cast<double>(cs.mcs.size()) > static_cast<double>(budget)) {
    throw ResourceError("numeric verification over {0.." + std::to_string(domain) +
                        "}^" + std::to_string(n) + " exceeds budget of " +
                        std::to_string(budget) + " state pairs");
  }
  std::vector<std::int64_t> s(n, 0);
  for (;;) {
    states.push_back(s);
    int i = 0;
    while (i < n && s[i] == domain) s[i++] = 0;
    if (i == n) break;
    ++s[i];
  }

  std::size_t len = 0;
  for (const auto& rows : ranking.rows) {
    for (const RankRow& r : rows) len = std::max(len, r.vector.entries.size());
  }

  NumericReport report;
  auto fail = [&](const MonotonicityConstraint& mc,
                  const std::vector<std::int64_t>& a,
                  const std::vector<std::int64_t>& b, std::string why) {
    report.valid = false;
    report.counterexample = Counterexample{mc.id(), a, b, std::move(why)};
  };

  for (const MonotonicityConstraint& mc : cs.mcs) {
    const std::vector<Arc> arcs = mc.arc_list();
    const Invariant& src_inv = cs.points[mc.src_point()].invariant;
    const Invariant& dst_inv = cs.points[mc.dst_point()].invariant;
    for (const auto& a : states) {
      if (!holds(src_inv, a)) continue;
      const auto ra = select_row(ranking, mc.src_point(), a);
      for (const auto& b : states) {
        if (!holds(dst_inv, b)) continue;
        const bool allowed = std::all_of(arcs.begin(), arcs.end(),
                                         [&](const Arc& e) { return holds(e, a, b); });
        if (!allowed) continue;
        ++report.transitions;
        const auto rb = select_row(ranking, mc.dst_point(), b);
        if (!ra || !rb) {
          fail(mc, a, b, "no guard holds");
          return report;
        }
        const auto va = evaluate(ranking.rows[mc.src_point()][*ra].vector, a, len);
        const auto vb = evaluate(ranking.rows[mc.dst_point()][*rb].vector, b, len);
        if (!(va > vb)) {
          fail(mc, a, b, "ranking does not decrease");
          return report;
        }
      }
    }
  }
  return report;
}

ConstraintSystem random_system(const RandomParams& params) {
  if (params.num_vars < 1 || params.points < 1 || params.mcs < 0) {
    throw std::invalid_argument("random_system: need vars >= 1, points >= 1, mcs >= 0");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, params.points - 1);
  const int n = params.num_vars;

  ConstraintSystem cs;
  cs.var_names = default_var_names(n);
  for (int p = 0; p < params.points; ++p) {
    FlowPoint fp{"f" + std::to_string(p + 1), {}};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || coin(rng) >= params.invariant_density) continue;
        fp.invariant.constraints.push_back({{i, false}, {j, false}, coin(rng) < 0.5});
      }
    }
    cs.points.push_back(std::move(fp));
  }
  for (int k = 0; k < params.mcs; ++k) {
    const PointId src = pick(rng);
    const PointId dst = pick(rng);
    MonotonicityConstraint mc("g" + std::to_string(k + 1), src, dst, n);
    for (int a = 0; a < 2 * n; ++a) {
      for (int b = 0; b < 2 * n; ++b) {
        if (a == b || coin(rng) >= params.density) continue;
        mc.add(Arc{mc.term(a), mc.term(b), coin(rng) < 0.5});
      }
    }
    cs.mcs.push_back(std::move(mc));
  }
  return cs;
}

std::optional<MonotonicityConstraint> random_closed_cyclic_mc(int num_vars,
                                                              double density,
                                                              std::uint64_t seed) {
  RandomParams p;
  p.num_vars = num_vars;
  p.points = 1;
  p.mcs = 1;
  p.density = density;
  p.seed = seed;
  return close(random_system(p).mcs.front());
}

}  // namespace mcsterm
