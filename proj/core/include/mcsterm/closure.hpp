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

// Constraint algebra: consequence closure, satisfiability, entailment,
// composition, collapse and subsumption.
//
// An MC is turned into a weighted digraph where a non-strict arc weighs 0
// and a strict arc weighs -1. The MC is unsatisfiable iff that graph has a
// negative cycle; otherwise its closure has an arc a -> b iff b is reachable
// from a, strict iff some such path is negative. Only the sign of a path
// weight matters, so weights saturate at -1.

#ifndef MCSTERM_CLOSURE_HPP_
#define MCSTERM_CLOSURE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcsterm/types.hpp"

namespace mcsterm {

class WeightedDigraph {
 public:
  explicit WeightedDigraph(int node_count);

  int node_count() const { return n_; }
  // Parallel arcs keep the lighter (strict) one.
  void add_arc(int from, int to, bool strict);
  void add(const RelMatrix& m, int offset_from, int offset_to, int count);
  // All-pairs lightest paths, cubic dynamic programming. Returns false iff
  // a negative-weight cycle exists; the path relation is then meaningless.
  bool lightest_paths();
  // After lightest_paths(): kGt for a negative path, kGeq for a zero path.
  Rel path(int from, int to) const;

 private:
  static constexpr std::int8_t kNoPath = 1;
  std::int8_t& w(int from, int to) {
    return weights_[static_cast<std::size_t>(from) * n_ + to];
  }
  std::int8_t w(int from, int to) const {
    return weights_[static_cast<std::size_t>(from) * n_ + to];
  }

  int n_;
  std::vector<std::int8_t> weights_;
};

// Dense n x n closure of an invariant, or nullopt when unsatisfiable.
std::optional<RelMatrix> close_invariant(const Invariant& inv, int num_vars);
bool satisfiable(const Invariant& inv, int num_vars);

// Consequence closure of `mc` under the source and target invariants.
// nullopt means unsatisfiable.
std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc,
                                            const Invariant& src_inv,
                                            const Invariant& dst_inv);
std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc);
// Uses the invariants of the MC's endpoints in `cs`.
std::optional<MonotonicityConstraint> close(const MonotonicityConstraint& mc,
                                            const ConstraintSystem& cs);

// True iff closed `g` has an arc at least as strong as `c`.
bool entails(const MonotonicityConstraint& g, const Arc& c);

// G1;G2 via lightest paths on the three-layer multipath. Throws
// std::invalid_argument when g1 does not end where g2 starts.
std::optional<MonotonicityConstraint> compose(const MonotonicityConstraint& g1,
                                              const MonotonicityConstraint& g2);
std::optional<MonotonicityConstraint> compose(const MonotonicityConstraint& g1,
                                              const MonotonicityConstraint& g2,
                                              const Invariant& mid_inv);

// Left fold of compose; a singleton collapses to its closure.
std::optional<MonotonicityConstraint> collapse(
    std::span<const MonotonicityConstraint> path);
// Collapse of the multipath cs.mcs[path[0]] cs.mcs[path[1]] ... including
// the invariants of every point on the way.
std::optional<MonotonicityConstraint> collapse(const ConstraintSystem& cs,
                                               std::span<const std::size_t> path);

// g subsumes h iff every arc of g is in h with at least g's strength, i.e.
// g describes every transition h describes. Both must be closed.
bool subsumes(const MonotonicityConstraint& g, const MonotonicityConstraint& h);

}  // namespace mcsterm

#endif  // MCSTERM_CLOSURE_HPP_
