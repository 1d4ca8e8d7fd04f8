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

// Lexicographic ranking functions for fully elaborated systems, and the
// elaboration-based decision procedure built on them.

#ifndef MCSTERM_RANKING_HPP_
#define MCSTERM_RANKING_HPP_

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "mcsterm/closure_decider.hpp"
#include "mcsterm/elaboration.hpp"
#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm {

// Per flow point, a set of variable indices (sorted, 0-based).
struct ThreadPreserver {
  std::vector<std::vector<int>> sets;

  bool operator==(const ThreadPreserver&) const = default;
};

// hidden[p][i] excludes variable i at point p. An empty `hidden` hides
// nothing.
using HiddenVars = std::vector<std::vector<bool>>;

// Unique maximal thread preserver over the non-hidden variables.
ThreadPreserver compute_mtp(const ConstraintSystem& cs,
                            const HiddenVars& hidden = {});

// Whether `p` is a thread preserver of cs.
bool is_thread_preserver(const ConstraintSystem& cs, const ThreadPreserver& p);

// A ranking over the points of an elaborated system.
struct ElaboratedRanking {
  std::vector<RankVector> vectors;  // indexed by elaborated PointId
  std::int64_t bound = 0;
};

// The strongly connected part of the residual system on which no thread
// preserver exists.
struct RankingFailure {
  std::vector<PointId> points;
  std::vector<std::size_t> mcs;  // indices into the elaborated system
};

using RankingOutcome = std::variant<ElaboratedRanking, RankingFailure>;

// Requires a fully elaborated system.
RankingOutcome build_ranking(const ElaboratedSystem& elab);

// Ranking over the original points: one row per compatible ordering, guard
// is the ordering over the original variables, rows with equal vectors are
// merged into one disjunctive guard.
RankingFunction translate_ranking(const ElaboratedRanking& rank,
                                  const ElaboratedSystem& elab);

Verdict decide_elaborate(const ConstraintSystem& cs,
                         const ElaborationOptions& opts = {});

}  // namespace mcsterm

#endif  // MCSTERM_RANKING_HPP_
