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

// Closure-based termination decision: saturate the set of collapses of all
// satisfiable multipaths, then run the local termination test on every
// cyclic member.

#ifndef MCSTERM_CLOSURE_DECIDER_HPP_
#define MCSTERM_CLOSURE_DECIDER_HPP_

#include <cstddef>
#include <vector>

#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm {

inline constexpr std::size_t kDefaultClosureBudget = 500000;

struct ClosureOptions {
  // Drop members that are more constrained than an existing member.
  bool subsumption = false;
  // Only test members G with G;G = G. Unsound together with subsumption.
  bool idempotent_only = false;
  std::size_t budget = kDefaultClosureBudget;
};

// Throws ConfigError for the subsumption + idempotent-only combination.
void check_options(const ClosureOptions& opts);

inline constexpr const char* kIdempotentSubsumptionWarning =
    "--subsumption cannot be combined with --idempotent-only: subsumption may "
    "discard the idempotent member that witnesses non-termination";

struct ClosureMember {
  MonotonicityConstraint mc;
  // Indices into cs.mcs of one shortest multipath collapsing to `mc`.
  std::vector<std::size_t> provenance;
};

struct ClosureSet {
  std::vector<ClosureMember> members;

  std::size_t size() const { return members.size(); }
};

// Fixed point of {close(G)} under composition. Throws ResourceError when
// the member count exceeds opts.budget.
ClosureSet closure_set(const ConstraintSystem& cs, const ClosureOptions& opts);

enum class CircularEdgeKind {
  kStrict,           // strict arc of the base MC
  kNonStrict,        // non-strict arc of the base MC
  kShortcutForward,  // x_i -> x_i'
  kShortcutBackward  // x_i' -> x_i
};

struct CircularEdge {
  int from = 0;
  int to = 0;
  CircularEdgeKind kind = CircularEdgeKind::kNonStrict;

  bool operator==(const CircularEdge&) const = default;
};

// A cyclic MC plus a shortcut edge x_i <-> x_i' for every variable.
class CircularVariant {
 public:
  explicit CircularVariant(const MonotonicityConstraint& base);

  const MonotonicityConstraint& base() const { return base_; }
  int node_count() const { return 2 * base_.num_vars(); }
  // Base arcs first, then shortcuts; each group sorted by (from, to).
  const std::vector<CircularEdge>& edges() const { return edges_; }

 private:
  MonotonicityConstraint base_;
  std::vector<CircularEdge> edges_;
};

// Shortcut balance of an edge: +1 forward, -1 backward, 0 for base arcs.
int shortcut_weight(CircularEdgeKind kind);

struct LttResult {
  bool pass = false;
  // A closed walk with a strict arc and non-positive shortcut balance.
  std::vector<CircularEdge> cycle;
};

// Local termination test on a closed, satisfiable, cyclic MC.
LttResult local_termination_test(const MonotonicityConstraint& g);

// Zig-zag descending cycle: forward base arcs x_i -> x_j' alternating with
// backward shortcuts. Incomplete; diagnostic only.
bool sagiv_test(const MonotonicityConstraint& g);

// Idempotence under composition.
bool idempotent(const MonotonicityConstraint& g);

Verdict decide_closure(const ConstraintSystem& cs, const ClosureOptions& opts);

}  // namespace mcsterm

#endif  // MCSTERM_CLOSURE_DECIDER_HPP_
