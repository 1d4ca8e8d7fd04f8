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

// Independent checkers: exhaustive cycle search, layered satisfiability,
// symbolic and numeric ranking verification, and random instances.

#ifndef MCSTERM_ORACLE_HPP_
#define MCSTERM_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm {

// 2 * (2n)^2.
std::size_t default_max_len(int num_vars);

// Breadth-first search over (node, shortcut balance, descended) states of
// the circular variant for a closed walk of at most max_len edges that
// contains a strict arc and has balance <= 0. max_len 0 means the default.
bool ltt_bruteforce(const MonotonicityConstraint& g, std::size_t max_len = 0);

// Whether k chained copies of g admit a solution, decided by Bellman-Ford
// on the (k+1)-layer constraint graph.
bool satisfiable_power(const MonotonicityConstraint& g, int k);

struct McCheck {
  std::string mc_id;
  bool ok = true;
  std::size_t cases = 0;  // satisfiable (row, row) combinations examined
  // First failing case: row indices at the source and target point.
  std::optional<std::size_t> src_row;
  std::optional<std::size_t> dst_row;
};

struct SymbolicReport {
  std::vector<McCheck> mcs;

  bool valid() const;
};

// Checks the guards of every point: each ordering compatible with the
// point invariant must satisfy exactly one row. Throws GuardError otherwise.
void check_guards(const ConstraintSystem& cs, const RankingFunction& ranking);

// Throws GuardError on non-exhaustive or overlapping guards.
SymbolicReport verify_ranking_symbolic(const ConstraintSystem& cs,
                                       const RankingFunction& ranking);

inline constexpr int kDefaultDomainSize = 4;
inline constexpr std::size_t kDefaultNumericBudget = 50000000;

struct Counterexample {
  std::string mc_id;
  std::vector<std::int64_t> src;
  std::vector<std::int64_t> dst;
  std::string reason;
};

struct NumericReport {
  bool valid = true;
  std::size_t transitions = 0;
  std::optional<Counterexample> counterexample;
};

// Enumerates every transition over {0..domain}^n. Throws ResourceError if
// more than `budget` state pairs would be examined.
NumericReport verify_ranking_numeric(const ConstraintSystem& cs,
                                     const RankingFunction& ranking,
                                     int domain = kDefaultDomainSize,
                                     std::size_t budget = kDefaultNumericBudget);

// Value of the ranking at (p, values): index of the unique row whose guard
// holds, or nullopt if none does.
std::optional<std::size_t> select_row(const RankingFunction& ranking, PointId p,
                                      const std::vector<std::int64_t>& values);

struct RandomParams {
  int num_vars = 2;
  int points = 1;
  int mcs = 1;
  double density = 0.3;
  std::uint64_t seed = 0;
  // Probability of each invariant arc between distinct unprimed variables.
  double invariant_density = 0.0;
};

// Points f1..fM, MCs g1..gK with uniformly drawn endpoints; every ordered
// pair of distinct nodes becomes an arc with probability `density`, strict
// with probability 1/2. Unsatisfiable MCs are kept.
ConstraintSystem random_system(const RandomParams& params);

// A closed, satisfiable self-loop over n variables, or nullopt when the
// drawn constraint is unsatisfiable.
std::optional<MonotonicityConstraint> random_closed_cyclic_mc(int num_vars,
                                                              double density,
                                                              std::uint64_t seed);

}  // namespace mcsterm

#endif  // MCSTERM_ORACLE_HPP_
