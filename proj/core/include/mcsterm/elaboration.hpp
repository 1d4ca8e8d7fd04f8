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

// Orderings of the variables, full elaboration, stabilization by splitting
// flow points, and the predicates that characterize their outputs.

#ifndef MCSTERM_ELABORATION_HPP_
#define MCSTERM_ELABORATION_HPP_

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "mcsterm/types.hpp"

namespace mcsterm {

// A weak total order of the variables: blocks of equal variables listed in
// increasing order. Indices are 0-based and sorted within each block.
struct Ordering {
  std::vector<std::vector<int>> blocks;

  int num_vars() const;
  // Position k of the result holds the variable that is k-th in sorted order.
  std::vector<int> flatten() const;
  // Inverse of flatten(): sorted position of each variable.
  std::vector<int> positions() const;
  // The order as a conjunction over the original variables.
  Invariant invariant() const;
  // The sorted form y_1 <= ... <= y_n (with < or = between neighbours).
  Invariant sorted_invariant() const;

  auto operator<=>(const Ordering&) const = default;
  bool operator==(const Ordering&) const = default;
};

// The chain x1<x2=x3 using the given variable names.
std::string format_ordering(const Ordering& o,
                            const std::vector<std::string>& names);

// Number of weak total orders of n elements.
std::size_t ordered_bell(int n);

inline constexpr int kDefaultOrderingCap = 6;

// All orderings of n variables in lexicographic order of their block lists.
// Throws ResourceError when n exceeds `cap`, std::invalid_argument for n < 1.
std::vector<Ordering> enumerate_orderings(int n, int cap = kDefaultOrderingCap);

inline constexpr std::size_t kDefaultElaborationBudget = 2000000;

struct ElaborationOptions {
  int ordering_cap = kDefaultOrderingCap;
  // Maximum number of candidate graphs (MCs times ordering pairs).
  std::size_t budget = kDefaultElaborationBudget;
};

struct ElaboratedSystem {
  // Variables are y1..yn; y_k stands for the k-th smallest original
  // variable at the point.
  ConstraintSystem system;
  std::vector<PointId> origin;      // elaborated point -> original point
  std::vector<Ordering> ordering;   // elaborated point -> its ordering
  std::vector<std::vector<PointId>> phi;  // original point -> copies
  std::vector<std::size_t> mc_origin;     // elaborated MC -> original MC
  // Whether the ordering is compatible with the original invariant.
  // Incompatible copies never carry MCs.
  std::vector<bool> consistent;
  std::size_t candidate_mcs = 0;

  // Original variable renamed to y_{k+1} at point p.
  std::vector<int> psi(PointId p) const { return ordering.at(p).flatten(); }
  // No satisfiable MC enters or leaves p.
  bool prunable(PointId p) const;
};

ElaboratedSystem fully_elaborate(const ConstraintSystem& cs,
                                 const ElaborationOptions& opts = {});

struct StabilizedSystem {
  ConstraintSystem system;
  std::vector<PointId> origin;              // point -> original point
  // original point -> copies; empty when the invariant is unsatisfiable
  std::vector<std::vector<PointId>> phi;
  std::vector<std::size_t> mc_origin;       // MC -> original MC
};

// Splits flow points until every relation an MC entails among source (or
// target) variables is recorded in the invariant. Throws ResourceError if
// the MC count exceeds `budget`.
StabilizedSystem stabilize(const ConstraintSystem& cs,
                           std::size_t budget = kDefaultElaborationBudget);

bool is_stable(const ConstraintSystem& cs);
bool is_fully_elaborated(const ConstraintSystem& cs);

// Downward closure of the target variables of g, taken in the sorted order
// given by `dst`. `src` must order g's source variables (it fixes the
// renaming of the source side and is checked for arity).
bool has_downward_closure(const MonotonicityConstraint& g, const Ordering& src,
                          const Ordering& dst);
// For MCs already indexed in sorted order (e.g. elaborated MCs).
bool has_downward_closure(const MonotonicityConstraint& g);

}  // namespace mcsterm

#endif  // MCSTERM_ELABORATION_HPP_
