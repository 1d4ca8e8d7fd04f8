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

#ifndef MCSTERM_VERDICT_HPP_
#define MCSTERM_VERDICT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcsterm/types.hpp"

namespace mcsterm {

// One (integer, variable) pair of a ranking vector. A missing variable is
// the sentinel "none", which equals itself and lies below every value.
struct RankEntry {
  std::int64_t weight = 0;
  std::optional<int> var;

  bool operator==(const RankEntry&) const = default;
};

// Lexicographically compared tuple <w1, v1, w2, v2, ...>. Vectors of
// different length compare as if the shorter one were right-padded with
// (0, none) entries. Only the last entry may lack a variable.
struct RankVector {
  std::vector<RankEntry> entries;

  // Each variable at most once; a var-less entry only in last position.
  bool well_formed(int num_vars) const;
  // Number of printed positions (2 per full entry, 1 for a trailing
  // var-less entry).
  std::size_t printed_length() const;

  bool operator==(const RankVector&) const = default;
};

// Disjunction of conjunctions over the unprimed variables of a point. An
// empty conjunction is `true`.
struct Guard {
  std::vector<std::vector<Constraint>> disjuncts;

  static Guard always() { return Guard{{{}}}; }
  bool operator==(const Guard&) const = default;
};

struct RankRow {
  Guard guard;
  RankVector vector;

  bool operator==(const RankRow&) const = default;
};

// A global ranking function: for every flow point, guarded rows whose
// guards partition the point's state space.
struct RankingFunction {
  std::vector<std::vector<RankRow>> rows;  // indexed by PointId
  std::int64_t bound = 0;

  bool operator==(const RankingFunction&) const = default;
};

// A cyclic closed MC that fails the local termination test, together with
// the ids of the MCs along the CFG cycle it collapses.
struct Witness {
  MonotonicityConstraint mc;
  std::vector<std::string> cycle;
};

enum class Result { kTerminating, kNonTerminating };

struct DecisionStats {
  std::size_t closure_set_size = 0;
  std::size_t elaborated_points = 0;
  std::size_t elaborated_mcs = 0;
};

struct Verdict {
  Result result = Result::kTerminating;
  std::optional<RankingFunction> ranking;  // only when terminating
  std::optional<Witness> witness;          // only when non-terminating
  DecisionStats stats;

  bool terminating() const { return result == Result::kTerminating; }
};

std::string to_string(Result r);

}  // namespace mcsterm

#endif  // MCSTERM_VERDICT_HPP_
