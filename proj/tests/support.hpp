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

// Shared fixtures, reference implementations and generators for the tests.
// The reference code deliberately avoids the library's algorithms: closure
// is computed by graph search instead of dynamic programming, and numeric
// checks evaluate constraints directly.

#ifndef MCSTERM_TESTS_SUPPORT_HPP_
#define MCSTERM_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm::testing {

inline constexpr const char* kEx1 =
    "vars x y z\n"
    "point f\n"
    "mc g1 f -> f { x < y, z = y', x' > z' }\n"
    "mc g2 f -> f { x >= y, z > z', x' > y' }\n";

inline constexpr const char* kEx1Scg =
    "vars x y z\n"
    "point f\n"
    "mc g1 f -> f { z > y' }\n"
    "mc g2 f -> f { z > z' }\n";

inline constexpr const char* kEx1HandRanking =
    "bound 1\n"
    "point f\n"
    "  if y > x -> <1, z>\n"
    "  if y <= x -> <0, z>\n";

inline constexpr const char* kElaborationExample =
    "vars x1 x2\n"
    "point f\n"
    "mc g f -> f { x1 > x1', x2 >= x2', x1' >= x2' }\n";

// Single self-loop MC over x1..xn parsed from `body`, e.g. "x1 > x2'".
MonotonicityConstraint mc_of(int n, std::string_view body);
// One-point system with the given self-loops.
ConstraintSystem loop_system(int n, const std::vector<std::string>& bodies);

// Closure by depth-first search over (node, seen-strict) states. nullopt
// iff some node reaches itself through a strict arc.
std::optional<RelMatrix> ref_closure(const RelMatrix& arcs);
std::optional<RelMatrix> ref_close(const MonotonicityConstraint& g,
                                   const Invariant& src = {},
                                   const Invariant& dst = {});
// Three-layer composition projected onto the outer layers.
std::optional<RelMatrix> ref_compose(const MonotonicityConstraint& g1,
                                     const MonotonicityConstraint& g2,
                                     const Invariant& mid = {});

using Values = std::vector<std::int64_t>;

bool holds(const MonotonicityConstraint& g, const Values& src, const Values& dst);
bool holds(const Invariant& inv, const Values& v);
bool holds(const std::vector<Constraint>& conj, const Values& v);
// {0..domain}^n in lexicographic order.
std::vector<Values> all_states(int n, int domain);

// Ordered Bell numbers by the binomial recurrence.
std::size_t bell_recurrence(int n);
// Weak orders counted as surjections onto 0..k-1, enumerated exhaustively.
std::size_t count_weak_orders(int n);

// Numeric ranking check written against the semantics directly: evaluates
// guards and compares value tuples lexicographically. Returns false on the
// first transition that does not descend.
bool ref_numeric_valid(const ConstraintSystem& cs, const RankingFunction& r,
                       int domain);

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  bool coin(double p);
  int below(int k);
  MonotonicityConstraint mc(std::string id, PointId src, PointId dst, int n,
                            double density);
  Invariant invariant(int n, double density);
  ConstraintSystem system(int n, int points, int mcs, double density,
                          double invariant_density = 0.0);

 private:
  std::mt19937_64 rng_;
};

}  // namespace mcsterm::testing

#endif  // MCSTERM_TESTS_SUPPORT_HPP_
