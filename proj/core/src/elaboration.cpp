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

#include "mcsterm/elaboration.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mcsterm/closure.hpp"

namespace mcsterm {

int Ordering::num_vars() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

std::vector<int> Ordering::flatten() const {
  std::vector<int> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<int> Ordering::positions() const {
  const std::vector<int> flat = flatten();
  std::vector<int> pos(flat.size());
  for (std::size_t k = 0; k < flat.size(); ++k) pos[flat[k]] = static_cast<int>(k);
  return pos;
}

namespace {

// Chain over consecutive elements of `order`; `same_block[k]` tells whether
// order[k] and order[k+1] are equal.
Invariant chain(const std::vector<int>& order, const std::vector<bool>& same_block) {
  Invariant inv;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const Term lo{order[k], false};
    const Term hi{order[k + 1], false};
    if (same_block[k]) {
      inv.constraints.push_back({lo, hi, false});
      inv.constraints.push_back({hi, lo, false});
    } else {
      inv.constraints.push_back({hi, lo, true});
    }
  }
  return inv;
}

std::vector<bool> block_links(const Ordering& o) {
  std::vector<bool> same;
  for (const auto& b : o.blocks) {
    for (std::size_t k = 0; k < b.size(); ++k) same.push_back(k + 1 < b.size());
  }
  if (!same.empty()) same.pop_back();
  return same;
}

}  // namespace

Invariant Ordering::invariant() const { return chain(flatten(), block_links(*this)); }

Invariant Ordering::sorted_invariant() const {
  std::vector<int> identity(num_vars());
  for (int k = 0; k < num_vars(); ++k) identity[k] = k;
  return chain(identity, block_links(*this));
}

std::string format_ordering(const Ordering& o,
                            const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t b = 0; b < o.blocks.size(); ++b) {
    if (b > 0) out += "<";
    for (std::size_t k = 0; k < o.blocks[b].size(); ++k) {
      if (k > 0) out += "=";
      out += names.at(o.blocks[b][k]);
    }
  }
  return out;
}

std::size_t ordered_bell(int n) {
  if (n < 0) throw std::invalid_argument("ordered_bell: negative n");
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

namespace {

void extend_orderings(const std::vector<int>& remaining, Ordering& prefix,
                      std::vector<Ordering>& out) {
  if (remaining.empty()) {
    out.push_back(prefix);
    return;
  }
  const std::size_t r = remaining.size();
  std::vector<std::vector<int>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<int> s;
    for (std::size_t k = 0; k < r; ++k) {
      if (mask & (std::size_t{1} << k)) s.push_back(remaining[k]);
    }
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());
  for (const auto& s : subsets) {
    std::vector<int> rest;
    std::set_difference(remaining.begin(), remaining.end(), s.begin(), s.end(),
                        std::back_inserter(rest));
    prefix.blocks.push_back(s);
    extend_orderings(rest, prefix, out);
    prefix.blocks.pop_back();
  }
}

}  // namespace

std::vector<Ordering> enumerate_orderings(int n, int cap) {
  if (n < 1) throw std::invalid_argument("enumerate_orderings: n must be >= 1");
  if (n > cap) {
    throw ResourceError("ordering enumeration capped at " + std::to_string(cap) +
                        " variables, got " + std::to_string(n));
  }
  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  std::vector<Ordering> out;
  out.reserve(ordered_bell(n));
  Ordering prefix;
  extend_orderings(all, prefix, out);
  return out;
}

bool ElaboratedSystem::prunable(PointId p) const {
  for (const MonotonicityConstraint& mc : system.mcs) {
    if (mc.src_point() == p || mc.dst_point() == p) return false;
  }
  return true;
}

namespace {

Invariant rename(const Invariant& inv, const std::vector<int>& pos) {
  Invariant out;
  for (const Arc& a : inv.constraints) {
    out.constraints.push_back(
        {{pos.at(a.src.var), false}, {pos.at(a.dst.var), false}, a.strict});
  }
  return out;
}

Invariant conjoin(Invariant a, const Invariant& b) {
  a.constraints.insert(a.constraints.end(), b.constraints.begin(),
                       b.constraints.end());
  return a;
}

std::vector<std::string> elaborated_var_names(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n; ++k) out.push_back("y" + std::to_string(k));
  return out;
}

}  // namespace

ElaboratedSystem fully_elaborate(const ConstraintSystem& cs,
                                 const ElaborationOptions& opts) {
  const int n = cs.num_vars();
  const std::vector<Ordering> orders = enumerate_orderings(n, opts.ordering_cap);
  const std::size_t b = orders.size();

  ElaboratedSystem out;
  out.candidate_mcs = cs.mcs.size() * b * b;
  if (out.candidate_mcs > opts.budget) {
    throw ResourceError("full elaboration needs " +
                        std::to_string(out.candidate_mcs) +
                        " candidate graphs, budget is " +
                        std::to_string(opts.budget));
  }
  out.system.var_names = elaborated_var_names(n);
  out.phi.resize(cs.points.size());

  std::vector<std::string> labels;
  std::vector<Invariant> sorted;
  std::vector<std::vector<int>> pos;
  for (const Ordering& o : orders) {
    labels.push_back(format_ordering(o, cs.var_names));
    sorted.push_back(o.sorted_invariant());
    pos.push_back(o.positions());
  }

  for (PointId f = 0; f < cs.points.size(); ++f) {
    const Invariant& inv = cs.points[f].invariant;
    for (std::size_t k = 0; k < b; ++k) {
      const PointId p = out.system.points.size();
      out.system.points.push_back({cs.points[f].name + "@" + labels[k], sorted[k]});
      out.origin.push_back(f);
      out.ordering.push_back(orders[k]);
      out.phi[f].push_back(p);
      out.consistent.push_back(satisfiable(conjoin(inv, orders[k].invariant()), n));
    }
  }

  for (std::size_t g = 0; g < cs.mcs.size(); ++g) {
    const MonotonicityConstraint& mc = cs.mcs[g];
    const std::vector<Arc> arcs = mc.arc_list();
    const Invariant& src_inv = cs.points.at(mc.src_point()).invariant;
    const Invariant& dst_inv = cs.points.at(mc.dst_point()).invariant;
    for (std::size_t s = 0; s < b; ++s) {
      const Invariant src_full = conjoin(rename(src_inv, pos[s]), sorted[s]);
      for (std::size_t t = 0; t < b; ++t) {
        MonotonicityConstraint e(mc.id() + "@" + labels[s] + "@" + labels[t],
                                 mc.src_point() * b + s, mc.dst_point() * b + t, n);
        for (const Arc& a : arcs) {
          const auto& ps = a.src.primed ? pos[t] : pos[s];
          const auto& pd = a.dst.primed ? pos[t] : pos[s];
          e.add(Arc{{ps[a.src.var], a.src.primed}, {pd[a.dst.var], a.dst.primed},
                    a.strict});
        }
        auto closed = close(e, src_full, conjoin(rename(dst_inv, pos[t]), sorted[t]));
        if (!closed) continue;
        out.system.mcs.push_back(std::move(*closed));
        out.mc_origin.push_back(g);
      }
    }
  }
  return out;
}

namespace {

struct StabPoint {
  PointId orig;
  Invariant inv;
  RelMatrix closed;
  bool alive = true;
};

struct StabMc {
  std::size_t orig;
  std::size_t src;
  std::size_t dst;
  MonotonicityConstraint mc;
  bool alive = true;
};

Arc negation(const Arc& r) { return Arc{r.dst, r.src, !r.strict}; }

}  // namespace

StabilizedSystem stabilize(const ConstraintSystem& cs, std::size_t budget) {
  const int n = cs.num_vars();
  std::vector<StabPoint> points;
  std::vector<StabMc> mcs;
  std::size_t alive_mcs = 0;

  for (PointId f = 0; f < cs.points.size(); ++f) {
    const Invariant& inv = cs.points[f].invariant;
    auto closed = close_invariant(inv, n);
    // A point without states is dropped; no MC can reach it anyway.
    points.push_back({f, inv, closed ? *closed : RelMatrix(n), closed.has_value()});
  }

  auto try_add = [&](std::size_t orig, std::size_t src, std::size_t dst) {
    for (const StabMc& m : mcs) {
      if (m.alive && m.orig == orig && m.src == src && m.dst == dst) return;
    }
    auto closed =
        close(cs.mcs[orig], points[src].inv, points[dst].inv);
    if (!closed) return;
    mcs.push_back({orig, src, dst, std::move(*closed), true});
    if (++alive_mcs > budget) {
      throw ResourceError("stabilization exceeds budget of " +
                          std::to_string(budget) + " MCs");
    }
  };

  for (std::size_t g = 0; g < cs.mcs.size(); ++g) {
    try_add(g, cs.mcs[g].src_point(), cs.mcs[g].dst_point());
  }

  for (;;) {
    // Least violation by (point, i, j, strength).
    bool found = false;
    std::size_t best_point = 0;
    int best_i = 0, best_j = 0;
    Rel best_rel = Rel::kNone;
    auto consider = [&](std::size_t p, int i, int j, Rel r) {
      if (r <= points[p].closed.at(i, j)) return;
      const auto key = std::tuple(p, i, j, r);
      if (!found || key < std::tuple(best_point, best_i, best_j, best_rel)) {
        found = true;
        std::tie(best_point, best_i, best_j, best_rel) = key;
      }
    };
    for (const StabMc& m : mcs) {
      if (!m.alive) continue;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          consider(m.src, i, j, m.mc.rel(i, j));
          consider(m.dst, i, j, m.mc.rel(n + i, n + j));
        }
      }
    }
    if (!found) break;

    const Arc rel{{best_i, false}, {best_j, false}, best_rel == Rel::kGt};
    points[best_point].alive = false;
    const PointId orig = points[best_point].orig;
    const Invariant base = points[best_point].inv;
    std::vector<std::size_t> replacements;
    for (const Arc& extra : {rel, negation(rel)}) {
      Invariant inv = base;
      inv.constraints.push_back(extra);
      auto closed = close_invariant(inv, n);
      if (!closed) continue;
      std::size_t id = points.size();
      for (std::size_t q = 0; q < points.size(); ++q) {
        if (points[q].alive && points[q].orig == orig &&
            points[q].closed == *closed) {
          id = q;
        }
      }
      if (id == points.size()) {
        points.push_back({orig, std::move(inv), *closed, true});
      }
      replacements.push_back(id);
    }

    const std::size_t count = mcs.size();
    for (std::size_t m = 0; m < count; ++m) {
      if (!mcs[m].alive) continue;
      if (mcs[m].src != best_point && mcs[m].dst != best_point) continue;
      mcs[m].alive = false;
      --alive_mcs;
      const std::vector<std::size_t> srcs =
          mcs[m].src == best_point ? replacements
                                   : std::vector<std::size_t>{mcs[m].src};
      const std::vector<std::size_t> dsts =
          mcs[m].dst == best_point ? replacements
                                   : std::vector<std::size_t>{mcs[m].dst};
      for (std::size_t s : srcs) {
        for (std::size_t d : dsts) try_add(mcs[m].orig, s, d);
      }
    }
  }

  StabilizedSystem out;
  out.system.var_names = cs.var_names;
  out.phi.resize(cs.points.size());
  std::vector<std::size_t> renumber(points.size(), 0);
  for (PointId f = 0; f < cs.points.size(); ++f) {
    std::vector<std::size_t> copies;
    for (std::size_t q = 0; q < points.size(); ++q) {
      if (points[q].alive && points[q].orig == f) copies.push_back(q);
    }
    for (std::size_t k = 0; k < copies.size(); ++k) {
      const PointId p = out.system.points.size();
      renumber[copies[k]] = p;
      std::string name = cs.points[f].name;
      if (copies.size() > 1) name += "@" + std::to_string(k + 1);
      out.system.points.push_back({std::move(name), points[copies[k]].inv});
      out.origin.push_back(f);
      out.phi[f].push_back(p);
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t m = 0; m < mcs.size(); ++m) {
    if (mcs[m].alive) order.push_back(m);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return std::tuple(mcs[l].orig, renumber[mcs[l].src], renumber[mcs[l].dst]) <
           std::tuple(mcs[r].orig, renumber[mcs[r].src], renumber[mcs[r].dst]);
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    StabMc& m = mcs[order[k]];
    const std::size_t copies = static_cast<std::size_t>(std::count_if(
        order.begin(), order.end(),
        [&](std::size_t o) { return mcs[o].orig == m.orig; }));
    const std::size_t rank = static_cast<std::size_t>(std::count_if(
        order.begin(), order.begin() + k,
        [&](std::size_t o) { return mcs[o].orig == m.orig; }));
    std::string id = cs.mcs[m.orig].id();
    if (copies > 1) id += "@" + std::to_string(rank + 1);
    m.mc.set_id(std::move(id));
    m.mc.set_endpoints(renumber[m.src], renumber[m.dst]);
    out.system.mcs.push_back(std::move(m.mc));
    out.mc_origin.push_back(m.orig);
  }
  return out;
}

namespace {

bool mcs_closed_and_satisfiable(const ConstraintSystem& cs) {
  for (const MonotonicityConstraint& mc : cs.mcs) {
    auto closed = close(mc, cs);
    if (!closed || closed->matrix() != mc.matrix()) return false;
  }
  return true;
}

}  // namespace

bool is_stable(const ConstraintSystem& cs) {
  if (!mcs_closed_and_satisfiable(cs)) return false;
  const int n = cs.num_vars();
  std::vector<RelMatrix> invs;
  for (const FlowPoint& p : cs.points) {
    auto closed = close_invariant(p.invariant, n);
    if (!closed) return false;
    invs.push_back(std::move(*closed));
  }
  for (const MonotonicityConstraint& mc : cs.mcs) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (mc.rel(i, j) > invs[mc.src_point()].at(i, j)) return false;
        if (mc.rel(n + i, n + j) > invs[mc.dst_point()].at(i, j)) return false;
      }
    }
  }
  return true;
}

bool is_fully_elaborated(const ConstraintSystem& cs) {
  const int n = cs.num_vars();
  for (const FlowPoint& p : cs.points) {
    auto closed = close_invariant(p.invariant, n);
    if (!closed) return false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Rel ij = closed->at(i, j);
        const Rel ji = closed->at(j, i);
        const bool decided = ij == Rel::kGt || ji == Rel::kGt ||
                             (ij == Rel::kGeq && ji == Rel::kGeq);
        if (!decided) return false;
      }
    }
  }
  return mcs_closed_and_satisfiable(cs);
}

bool has_downward_closure(const MonotonicityConstraint& g, const Ordering& src,
                          const Ordering& dst) {
  const int n = g.num_vars();
  if (src.num_vars() != n || dst.num_vars() != n) {
    throw std::invalid_argument("has_downward_closure: ordering arity mismatch");
  }
  const std::vector<int> order = dst.flatten();
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < n; ++p) {
      const Rel r = g.rel(i, n + order[p]);
      if (r == Rel::kNone) continue;
      for (int q = 0; q < p; ++q) {
        const Rel lower = g.rel(i, n + order[q]);
        if (r == Rel::kGt ? lower != Rel::kGt : lower == Rel::kNone) return false;
      }
    }
  }
  return true;
}

bool has_downward_closure(const MonotonicityConstraint& g) {
  Ordering chain;
  for (int k = 0; k < g.num_vars(); ++k) chain.blocks.push_back({k});
  return has_downward_closure(g, chain, chain);
}

}  // namespace mcsterm
