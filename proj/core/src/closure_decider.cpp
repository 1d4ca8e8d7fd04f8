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

#include "mcsterm/closure_decider.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "graph_util.hpp"
#include "mcsterm/closure.hpp"

namespace mcsterm {

void check_options(const ClosureOptions& opts) {
  if (opts.subsumption && opts.idempotent_only) {
    throw ConfigError(kIdempotentSubsumptionWarning);
  }
}

namespace {

std::string member_key(const MonotonicityConstraint& g) {
  std::string key = std::to_string(g.src_point()) + ":" +
                    std::to_string(g.dst_point()) + ":";
  for (Rel r : g.matrix().cells()) key.push_back(static_cast<char>('0' + int(r)));
  return key;
}

}  // namespace

ClosureSet closure_set(const ConstraintSystem& cs, const ClosureOptions& opts) {
  check_options(opts);

  std::vector<std::optional<MonotonicityConstraint>> generators;
  generators.reserve(cs.mcs.size());
  for (const MonotonicityConstraint& mc : cs.mcs) generators.push_back(close(mc, cs));

  std::vector<ClosureMember> all;
  std::vector<bool> alive;
  std::size_t alive_count = 0;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::pair<PointId, PointId>, std::vector<std::size_t>> by_endpoints;
  std::deque<std::size_t> queue;

  auto insert = [&](MonotonicityConstraint g, std::vector<std::size_t> prov) {
    std::string key = member_key(g);
    auto found = index.find(key);
    if (found != index.end() && (!opts.subsumption || alive[found->second])) {
      return;
    }
    auto& peers = by_endpoints[{g.src_point(), g.dst_point()}];
    if (opts.subsumption) {
      for (std::size_t m : peers) {
        if (alive[m] && subsumes(all[m].mc, g)) return;
      }
      for (std::size_t m : peers) {
        if (alive[m] && subsumes(g, all[m].mc)) {
          alive[m] = false;
          --alive_count;
        }
      }
    }
    const std::size_t id = all.size();
    index[key] = id;
    peers.push_back(id);
    all.push_back({std::move(g), std::move(prov)});
    alive.push_back(true);
    ++alive_count;
    if (alive_count > opts.budget) {
      throw ResourceError("closure set exceeds budget of " +
                          std::to_string(opts.budget) + " members");
    }
    queue.push_back(id);
  };

  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i]) insert(*generators[i], {i});
  }
  // Breadth-first extension by one generator keeps provenances shortest.
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (!alive[x]) continue;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (!generators[j] || generators[j]->src_point() != all[x].mc.dst_point()) {
        continue;
      }
      auto c = compose(all[x].mc, *generators[j]);
      if (!c) continue;
      std::vector<std::size_t> prov = all[x].provenance;
      prov.push_back(j);
      insert(std::move(*c), std::move(prov));
    }
  }

  ClosureSet out;
  out.members.reserve(alive_count);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (alive[i]) out.members.push_back(std::move(all[i]));
  }
  return out;
}

int shortcut_weight(CircularEdgeKind kind) {
  switch (kind) {
    case CircularEdgeKind::kShortcutForward:
      return 1;
    case CircularEdgeKind::kShortcutBackward:
      return -1;
    default:
      return 0;
  }
}

CircularVariant::CircularVariant(const MonotonicityConstraint& base)
    : base_(base) {
  const int nodes = 2 * base_.num_vars();
  for (int a = 0; a < nodes; ++a) {
    for (int b = 0; b < nodes; ++b) {
      const Rel r = base_.rel(a, b);
      if (a == b || r == Rel::kNone) continue;
      edges_.push_back({a, b,
                        r == Rel::kGt ? CircularEdgeKind::kStrict
                                      : CircularEdgeKind::kNonStrict});
    }
  }
  std::vector<CircularEdge> shortcuts;
  const int n = base_.num_vars();
  for (int i = 0; i < n; ++i) {
    shortcuts.push_back({i, n + i, CircularEdgeKind::kShortcutForward});
    shortcuts.push_back({n + i, i, CircularEdgeKind::kShortcutBackward});
  }
  std::sort(shortcuts.begin(), shortcuts.end(),
            [](const CircularEdge& l, const CircularEdge& r) {
              return std::pair(l.from, l.to) < std::pair(r.from, r.to);
            });
  edges_.insert(edges_.end(), shortcuts.begin(), shortcuts.end());
}

namespace {

using EdgeList = std::vector<CircularEdge>;

// Breadth-first path from `from` to `to` using only edges accepted by
// `use`; successors are tried in edge order. Empty when from == to.
std::optional<EdgeList> bfs_path(int node_count, const EdgeList& edges,
                                 int from, int to,
                                 const std::vector<bool>& use) {
  std::vector<int> pred(node_count, -1);
  std::vector<bool> seen(node_count, false);
  std::deque<int> q{from};
  seen[from] = true;
  while (!q.empty() && !seen[to]) {
    const int v = q.front();
    q.pop_front();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!use[e] || edges[e].from != v || seen[edges[e].to]) continue;
      seen[edges[e].to] = true;
      pred[edges[e].to] = static_cast<int>(e);
      q.push_back(edges[e].to);
    }
  }
  if (!seen[to]) return std::nullopt;
  EdgeList path;
  for (int v = to; v != from;) {
    const CircularEdge& e = edges[pred[v]];
    path.push_back(e);
    v = e.from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int balance(const EdgeList& walk) {
  int total = 0;
  for (const CircularEdge& e : walk) total += shortcut_weight(e.kind);
  return total;
}

}  // namespace

LttResult local_termination_test(const MonotonicityConstraint& g) {
  const CircularVariant cv(g);
  const EdgeList& edges = cv.edges();
  const int nodes = cv.node_count();

  std::vector<std::vector<int>> succ(nodes);
  for (const CircularEdge& e : edges) succ[e.from].push_back(e.to);
  const detail::Components scc = detail::strongly_connected_components(succ);

  for (int c = 0; c < scc.count; ++c) {
    std::vector<bool> in_c(edges.size(), false);
    std::optional<std::size_t> first_strict;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      in_c[e] = scc.component[edges[e].from] == c &&
                scc.component[edges[e].to] == c;
      if (in_c[e] && edges[e].kind == CircularEdgeKind::kStrict && !first_strict) {
        first_strict = e;
      }
    }
    if (!first_strict) continue;

    std::vector<int> members;
    for (int v = 0; v < nodes; ++v) {
      if (scc.component[v] == c) members.push_back(v);
    }
    std::vector<long> dist(nodes, 0);
    std::vector<int> pred(nodes, -1);
    int relaxed = -1;
    for (std::size_t round = 0; round < members.size(); ++round) {
      relaxed = -1;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!in_c[e]) continue;
        const long cand = dist[edges[e].from] + shortcut_weight(edges[e].kind);
        if (cand < dist[edges[e].to]) {
          dist[edges[e].to] = cand;
          pred[edges[e].to] = static_cast<int>(e);
          relaxed = edges[e].to;
        }
      }
      if (relaxed == -1) break;
    }

    if (relaxed != -1) {
      // Negative cycle: step back far enough to land on it, then read it off.
      int v = relaxed;
      for (std::size_t i = 0; i < members.size(); ++i) v = edges[pred[v]].from;
      EdgeList negative;
      int u = v;
      do {
        const CircularEdge& e = edges[pred[u]];
        negative.push_back(e);
        u = e.from;
      } while (u != v);
      std::reverse(negative.begin(), negative.end());

      const CircularEdge& s = edges[*first_strict];
      auto to_s = bfs_path(nodes, edges, v, s.from, in_c);
      auto back = bfs_path(nodes, edges, s.to, v, in_c);
      if (!to_s || !back) throw InternalError("ltt: component is not strongly connected");
      EdgeList walk = std::move(*to_s);
      walk.push_back(s);
      walk.insert(walk.end(), back->begin(), back->end());
      const int loop = balance(walk);
      const int step = -balance(negative);
      const int repeats = loop > 0 ? (loop + step - 1) / step : 0;
      for (int k = 0; k < repeats; ++k) {
        walk.insert(walk.end(), negative.begin(), negative.end());
      }
      return {true, std::move(walk)};
    }

    // No negative cycle: a strict arc lies on a zero cycle iff it is tight
    // under the potentials and closes a cycle of tight edges.
    std::vector<bool> tight(edges.size(), false);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      tight[e] = in_c[e] && shortcut_weight(edges[e].kind) + dist[edges[e].from] -
                                    dist[edges[e].to] == 0;
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!tight[e] || edges[e].kind != CircularEdgeKind::kStrict) continue;
      auto back = bfs_path(nodes, edges, edges[e].to, edges[e].from, tight);
      if (!back) continue;
      EdgeList walk{edges[e]};
      walk.insert(walk.end(), back->begin(), back->end());
      return {true, std::move(walk)};
    }
  }
  return {false, {}};
}

bool sagiv_test(const MonotonicityConstraint& g) {
  const int n = g.num_vars();
  // reach[i][j]: some chain x_i -> x_k' ... reaches x_j'.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reach[i][j] = g.rel(i, n + j) != Rel::kNone;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.rel(i, n + j) == Rel::kGt && (i == j || reach[j][i])) return true;
    }
  }
  return false;
}

bool idempotent(const MonotonicityConstraint& g) {
  if (!g.cyclic()) return false;
  auto gg = compose(g, g);
  return gg && gg->matrix() == g.matrix();
}

Verdict decide_closure(const ConstraintSystem& cs, const ClosureOptions& opts) {
  check_options(opts);
  ClosureSet set = closure_set(cs, opts);
  Verdict v;
  v.stats.closure_set_size = set.size();
  for (ClosureMember& m : set.members) {
    if (!m.mc.cyclic()) continue;
    if (opts.idempotent_only && !idempotent(m.mc)) continue;
    if (local_termination_test(m.mc).pass) continue;
    v.result = Result::kNonTerminating;
    Witness w{std::move(m.mc), {}};
    for (std::size_t i : m.provenance) w.cycle.push_back(cs.mcs[i].id());
    v.witness = std::move(w);
    return v;
  }
  v.result = Result::kTerminating;
  return v;
}

}  // namespace mcsterm
