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

#include "mcsterm/closure.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcsterm {

WeightedDigraph::WeightedDigraph(int node_count)
    : n_(node_count),
      weights_(static_cast<std::size_t>(node_count) * node_count, kNoPath) {}

void WeightedDigraph::add_arc(int from, int to, bool strict) {
  std::int8_t& cell = w(from, to);
  cell = std::min<std::int8_t>(cell, strict ? -1 : 0);
}

void WeightedDigraph::add(const RelMatrix& m, int offset_from, int offset_to,
                          int count) {
  // Rows [0, count) of m map to nodes offset_from + r; rows [count, 2*count)
  // (the primed half) map to offset_to + r - count. Same for columns.
  auto place = [&](int node) {
    return node < count ? offset_from + node : offset_to + node - count;
  };
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) {
      const Rel r = m.at(a, b);
      if (r != Rel::kNone) add_arc(place(a), place(b), r == Rel::kGt);
    }
  }
}

bool WeightedDigraph::lightest_paths() {
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      const std::int8_t ik = w(i, k);
      if (ik == kNoPath) continue;
      for (int j = 0; j < n_; ++j) {
        const std::int8_t kj = w(k, j);
        if (kj == kNoPath) continue;
        const std::int8_t via = std::max<std::int8_t>(-1, ik + kj);
        if (via < w(i, j)) w(i, j) = via;
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    if (w(i, i) < 0) return false;
  }
  return true;
}

Rel WeightedDigraph::path(int from, int to) const {
  const std::int8_t v = w(from, to);
  if (v == kNoPath) return Rel::kNone;
  return v < 0 ? Rel::kGt : Rel::kGeq;
}

namespace {

void add_invariant(WeightedDigraph& g, const Invariant& inv, int offset,
                   int num_vars) {
  for (const Arc& a : inv.constraints) {
    if (a.src.var < 0 || a.src.var >= num_vars || a.dst.var < 0 ||
        a.dst.var >= num_vars) {
      throw std::out_of_range("invariant term outside the declared variables");
    }
    g.add_arc(offset + a.src.var, offset + a.dst.var, a.strict);
  }
}

// Reads the closed MC over two layers of `g`: source layer starting at node
// `src_off`, target layer at `dst_off`.
MonotonicityConstraint extract(const WeightedDigraph& g, int n, int src_off,
                               int dst_off, const std::string& id, PointId src,
                               PointId dst) {
  MonotonicityConstraint out(id, src, dst, n);
  RelMatrix& m = out.mutable_matrix();
  auto layer_node = [&](int node) {
    return node < n ? src_off + node : dst_off + node - n;
  };
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = 0; b < 2 * n; ++b) {
      if (a == b) continue;
      m.set(a, b, g.path(layer_node(a), layer_node(b)));
    }
  }
  out.mark_closed();
  return out;
}

}  // namespace

std::optional<RelMatrix> close_invariant(const Invariant& inv, int num_vars) {
  WeightedDigraph g(num_vars);
  add_invariant(g, inv, 0, num_vars);
  if (!g.lightest_paths()) return std::nullopt;
  RelMatrix m(num_vars);
  for (int a = 0; a < num_vars; ++a) {
    for (int b = 0; b < num_vars; ++b) {
      if (a != b) m.set(a, b, g.path(a, b));
    }
  }
  return m;
}

bool satisfiable(const Invariant& inv, int num_vars) {
  return close_invariant(inv, num_vars).has_value();
}

std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc,
                                            const Invariant& src_inv,
                                            const Invariant& dst_inv) {
  const int n = mc.num_vars();
  WeightedDigraph g(2 * n);
  g.add(mc.matrix(), 0, n, n);
  add_invariant(g, src_inv, 0, n);
  add_invariant(g, dst_inv, n, n);
  if (!g.lightest_paths()) return std::nullopt;
  return extract(g, n, 0, n, mc.id(), mc.src_point(), mc.dst_point());
}

std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc) {
  return close(mc, Invariant{}, Invariant{});
}

std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc,
                                            const ConstraintSystem& cs) {
  return close(mc, cs.points.at(mc.src_point()).invariant,
               cs.points.at(mc.dst_point()).invariant);
}

bool entails(const MonotonicityConstraint& g, const Arc& c) {
  const int a = g.node(c.src);
  const int b = g.node(c.dst);
  if (a == b) return !c.strict;
  const Rel have = g.rel(a, b);
  return c.strict ? have == Rel::kGt : have != Rel::kNone;
}

std::optional<MonotonicityConstraint> compose(const MonotonicityConstraint& g1,
                                              const MonotonicityConstraint& g2,
                                              const Invariant& mid_inv) {
  if (g1.dst_point() != g2.src_point()) {
    throw std::invalid_argument("compose: " + g1.id() + " does not end where " +
                                g2.id() + " starts");
  }
  if (g1.num_vars() != g2.num_vars()) {
    throw std::invalid_argument("compose: variable counts differ");
  }
  const int n = g1.num_vars();
  // Layers: source [0, n), middle [n, 2n), target [2n, 3n).
  WeightedDigraph g(3 * n);
  g.add(g1.matrix(), 0, n, n);
  g.add(g2.matrix(), n, 2 * n, n);
  add_invariant(g, mid_inv, n, n);
  if (!g.lightest_paths()) return std::nullopt;
  return extract(g, n, 0, 2 * n, g1.id() + ";" + g2.id(), g1.src_point(),
                 g2.dst_point());
}

std::optional<MonotonicityConstraint> compose(const MonotonicityConstraint& g1,
                                              const MonotonicityConstraint& g2) {
  return compose(g1, g2, Invariant{});
}

std::optional<MonotonicityConstraint> collapse(
    std::span<const MonotonicityConstraint> path) {
  if (path.empty()) throw std::invalid_argument("collapse: empty path");
  std::optional<MonotonicityConstraint> acc = close(path.front());
  for (std::size_t i = 1; i < path.size() && acc; ++i) {
    acc = compose(*acc, path[i]);
  }
  return acc;
}

std::optional<MonotonicityConstraint> collapse(const ConstraintSystem& cs,
                                               std::span<const std::size_t> path) {
  if (path.empty()) throw std::invalid_argument("collapse: empty path");
  std::optional<MonotonicityConstraint> acc = close(cs.mcs.at(path[0]), cs);
  for (std::size_t i = 1; i < path.size() && acc; ++i) {
    const MonotonicityConstraint& next = cs.mcs.at(path[i]);
    auto closed_next = close(next, cs);
    if (!closed_next) return std::nullopt;
    acc = compose(*acc, *closed_next);
  }
  return acc;
}

bool subsumes(const MonotonicityConstraint& g, const MonotonicityConstraint& h) {
  if (g.src_point() != h.src_point() || g.dst_point() != h.dst_point()) {
    throw std::invalid_argument("subsumes: endpoints differ");
  }
  const auto& gc = g.matrix().cells();
  const auto& hc = h.matrix().cells();
  if (gc.size() != hc.size()) {
    throw std::invalid_argument("subsumes: variable counts differ");
  }
  for (std::size_t i = 0; i < gc.size(); ++i) {
    if (gc[i] > hc[i]) return false;
  }
  return true;
}

}  // namespace mcsterm
