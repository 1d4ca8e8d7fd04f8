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

#include "mcsterm/ranking.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "graph_util.hpp"
#include "mcsterm/closure.hpp"

namespace mcsterm {

namespace {

using Membership = std::vector<std::vector<bool>>;

// Greatest fixpoint over the MCs listed in `active`. Points that no active
// MC touches keep all their non-hidden variables.
Membership mtp_over(const ConstraintSystem& cs,
                    const std::vector<std::size_t>& active,
                    const HiddenVars& hidden) {
  const int n = cs.num_vars();
  const std::size_t points = cs.points.size();
  Membership in(points, std::vector<bool>(n, true));
  if (!hidden.empty()) {
    for (std::size_t p = 0; p < points; ++p) {
      for (int i = 0; i < n; ++i) {
        if (hidden.at(p).at(i)) in[p][i] = false;
      }
    }
  }

  // support[k][i]: targets j in P(dst) with an arc x_i -> x_j' in MC active[k].
  std::vector<std::vector<int>> support(active.size(), std::vector<int>(n, 0));
  std::vector<std::vector<std::size_t>> entering(points);
  std::deque<std::pair<PointId, int>> removed;
  auto remove = [&](PointId p, int i) {
    if (!in[p][i]) return;
    in[p][i] = false;
    removed.emplace_back(p, i);
  };

  for (std::size_t k = 0; k < active.size(); ++k) {
    const MonotonicityConstraint& g = cs.mcs[active[k]];
    entering[g.dst_point()].push_back(k);
  }
  for (std::size_t k = 0; k < active.size(); ++k) {
    const MonotonicityConstraint& g = cs.mcs[active[k]];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (in[g.dst_point()][j] && g.rel(i, n + j) != Rel::kNone) ++support[k][i];
      }
    }
  }
  for (std::size_t k = 0; k < active.size(); ++k) {
    const MonotonicityConstraint& g = cs.mcs[active[k]];
    for (int i = 0; i < n; ++i) {
      if (support[k][i] == 0) remove(g.src_point(), i);
    }
  }
  while (!removed.empty()) {
    const auto [q, j] = removed.front();
    removed.pop_front();
    for (std::size_t k : entering[q]) {
      const MonotonicityConstraint& g = cs.mcs[active[k]];
      for (int i = 0; i < n; ++i) {
        if (g.rel(i, n + j) == Rel::kNone) continue;
        if (--support[k][i] == 0) remove(g.src_point(), i);
      }
    }
  }
  return in;
}

std::vector<std::size_t> all_indices(std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = k;
  return out;
}

}  // namespace

ThreadPreserver compute_mtp(const ConstraintSystem& cs, const HiddenVars& hidden) {
  const Membership in = mtp_over(cs, all_indices(cs.mcs.size()), hidden);
  ThreadPreserver out;
  for (const auto& row : in) {
    std::vector<int> set;
    for (int i = 0; i < static_cast<int>(row.size()); ++i) {
      if (row[i]) set.push_back(i);
    }
    out.sets.push_back(std::move(set));
  }
  return out;
}

bool is_thread_preserver(const ConstraintSystem& cs, const ThreadPreserver& p) {
  const int n = cs.num_vars();
  if (p.sets.size() != cs.points.size()) return false;
  for (const MonotonicityConstraint& g : cs.mcs) {
    for (int i : p.sets[g.src_point()]) {
      const auto& targets = p.sets[g.dst_point()];
      const bool ok = std::any_of(targets.begin(), targets.end(), [&](int j) {
        return g.rel(i, n + j) != Rel::kNone;
      });
      if (!ok) return false;
    }
  }
  return true;
}

RankingOutcome build_ranking(const ElaboratedSystem& elab) {
  const ConstraintSystem& cs = elab.system;
  const int n = cs.num_vars();
  const std::size_t points = cs.points.size();

  ElaboratedRanking out;
  out.vectors.resize(points);
  HiddenVars hidden(points, std::vector<bool>(n, false));
  std::vector<std::size_t> active = all_indices(cs.mcs.size());
  bool first = true;

  for (;;) {
    // Points taking part in this level, in index order.
    std::vector<bool> take(points, first);
    for (std::size_t k : active) {
      take[cs.mcs[k].src_point()] = true;
      take[cs.mcs[k].dst_point()] = true;
    }
    std::vector<PointId> level;
    std::vector<int> local(points, -1);
    for (PointId p = 0; p < points; ++p) {
      if (!take[p]) continue;
      local[p] = static_cast<int>(level.size());
      level.push_back(p);
    }
    first = false;

    std::vector<std::vector<int>> succ(level.size());
    for (std::size_t k : active) {
      succ[local[cs.mcs[k].src_point()]].push_back(local[cs.mcs[k].dst_point()]);
    }
    const detail::Components scc = detail::strongly_connected_components(succ);
    // Height in the condensation, sinks at 1. Components are numbered sinks
    // first, so successors are always final when a component is reached.
    std::vector<std::vector<int>> down(scc.count);
    for (std::size_t v = 0; v < level.size(); ++v) {
      for (int w : succ[v]) {
        if (scc.component[v] != scc.component[w]) {
          down[scc.component[v]].push_back(scc.component[w]);
        }
      }
    }
    std::vector<std::int64_t> height(scc.count, 1);
    for (int c = 0; c < scc.count; ++c) {
      for (int d : down[c]) height[c] = std::max(height[c], height[d] + 1);
    }
    auto kappa = [&](PointId p) { return height[scc.component[local[p]]]; };
    for (std::int64_t h : height) out.bound = std::max(out.bound, h);

    std::vector<std::size_t> intra;
    std::vector<bool> nontrivial(scc.count, false);
    for (std::size_t k : active) {
      const int c = scc.component[local[cs.mcs[k].src_point()]];
      if (c == scc.component[local[cs.mcs[k].dst_point()]]) {
        intra.push_back(k);
        nontrivial[c] = true;
      }
    }
    for (PointId p : level) {
      if (!nontrivial[scc.component[local[p]]]) {
        out.vectors[p].entries.push_back({kappa(p), std::nullopt});
      }
    }
    if (intra.empty()) break;

    const Membership mtp = mtp_over(cs, intra, hidden);
    std::vector<int> chosen(points, -1);
    std::optional<int> failed;
    for (PointId p : level) {
      const int c = scc.component[local[p]];
      if (!nontrivial[c]) continue;
      const auto it = std::find(mtp[p].begin(), mtp[p].end(), true);
      if (it == mtp[p].end()) {
        if (!failed || c < *failed) failed = c;
        continue;
      }
      chosen[p] = static_cast<int>(it - mtp[p].begin());
    }
    if (failed) {
      RankingFailure f;
      for (PointId p : level) {
        if (scc.component[local[p]] == *failed) f.points.push_back(p);
      }
      for (std::size_t k : intra) {
        if (scc.component[local[cs.mcs[k].src_point()]] == *failed) f.mcs.push_back(k);
      }
      return f;
    }

    std::vector<std::size_t> kept;
    for (std::size_t k : intra) {
      const MonotonicityConstraint& g = cs.mcs[k];
      const Rel r = g.rel(chosen[g.src_point()], n + chosen[g.dst_point()]);
      if (r == Rel::kNone) {
        throw InternalError("ranking: " + g.id() + " lacks the thread preserver arc");
      }
      if (r == Rel::kGeq) kept.push_back(k);
    }
    for (PointId p : level) {
      if (chosen[p] < 0) continue;
      out.vectors[p].entries.push_back({kappa(p), chosen[p]});
      hidden[p][chosen[p]] = true;
    }
    if (kept.empty()) break;
    active = std::move(kept);
  }
  return out;
}

namespace {

std::vector<Constraint> ordering_guard(const Ordering& o) {
  std::vector<Constraint> out;
  const std::vector<int> flat = o.flatten();
  std::size_t pos = 0;
  for (std::size_t b = 0; b < o.blocks.size(); ++b) {
    for (std::size_t k = 0; k < o.blocks[b].size(); ++k, ++pos) {
      if (pos + 1 >= flat.size()) break;
      const RelOp op = k + 1 < o.blocks[b].size() ? RelOp::kEq : RelOp::kLt;
      out.push_back({{flat[pos], false}, op, {flat[pos + 1], false}});
    }
  }
  return out;
}

}  // namespace

RankingFunction translate_ranking(const ElaboratedRanking& rank,
                                  const ElaboratedSystem& elab) {
  RankingFunction out;
  out.bound = rank.bound;
  out.rows.resize(elab.phi.size());
  for (PointId f = 0; f < elab.phi.size(); ++f) {
    for (PointId p : elab.phi[f]) {
      if (!elab.consistent.at(p)) continue;
      if (p >= rank.vectors.size()) {
        throw InternalError("ranking has no vector for elaborated point " +
                            elab.system.points.at(p).name);
      }
      const std::vector<int> psi = elab.psi(p);
      RankVector v = rank.vectors[p];
      for (RankEntry& e : v.entries) {
        if (e.var) e.var = psi.at(*e.var);
      }
      auto& rows = out.rows[f];
      auto same = std::find_if(rows.begin(), rows.end(),
                               [&](const RankRow& r) { return r.vector == v; });
      if (same != rows.end()) {
        same->guard.disjuncts.push_back(ordering_guard(elab.ordering[p]));
      } else {
        rows.push_back({Guard{{ordering_guard(elab.ordering[p])}}, std::move(v)});
      }
    }
  }
  return out;
}

Verdict decide_elaborate(const ConstraintSystem& cs, const ElaborationOptions& opts) {
  const ElaboratedSystem elab = fully_elaborate(cs, opts);
  Verdict v;
  v.stats.elaborated_points = elab.system.points.size();
  v.stats.elaborated_mcs = elab.system.mcs.size();

  RankingOutcome outcome = build_ranking(elab);
  if (auto* ranking = std::get_if<ElaboratedRanking>(&outcome)) {
    v.result = Result::kTerminating;
    v.ranking = translate_ranking(*ranking, elab);
    return v;
  }

  // Non-terminating: find a cycle inside the failing component and replay it
  // on the original MCs.
  const RankingFailure& failure = std::get<RankingFailure>(outcome);
  ConstraintSystem sub;
  sub.var_names = elab.system.var_names;
  sub.points = elab.system.points;
  for (std::size_t k : failure.mcs) sub.mcs.push_back(elab.system.mcs[k]);
  const Verdict local = decide_closure(sub, ClosureOptions{});
  if (local.witness) {
    std::vector<std::size_t> path;
    for (const std::string& id : local.witness->cycle) {
      path.push_back(elab.mc_origin[failure.mcs[*sub.find_mc(id)]]);
    }
    auto replay = collapse(cs, path);
    if (replay && replay->cyclic() && !local_termination_test(*replay).pass) {
      v.result = Result::kNonTerminating;
      Witness w{std::move(*replay), {}};
      for (std::size_t k : path) w.cycle.push_back(cs.mcs[k].id());
      v.witness = std::move(w);
      return v;
    }
  }
  Verdict global = decide_closure(cs, ClosureOptions{});
  if (global.terminating()) {
    throw InternalError(
        "elaboration found no ranking but the closure set passes every test");
  }
  v.result = Result::kNonTerminating;
  v.witness = std::move(global.witness);
  v.stats.closure_set_size = global.stats.closure_set_size;
  return v;
}

}  // namespace mcsterm
