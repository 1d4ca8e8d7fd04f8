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

// Data model for monotonicity constraint systems: terms, arcs, constraints
// viewed as labeled digraphs, flow points with invariants, and the system
// itself.

#ifndef MCSTERM_TYPES_HPP_
#define MCSTERM_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcsterm {

// Errors. Everything the library throws derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid combination of options (e.g. subsumption with idempotent-only).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An element-count or enumeration budget was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A ranking's guards do not cover (or overlap on) some region.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Strength of a relation between two terms. Ordered so that a larger value
// is a stronger constraint.
enum class Rel : std::uint8_t { kNone = 0, kGeq = 1, kGt = 2 };

inline Rel stronger(Rel a, Rel b) { return a < b ? b : a; }

// x_i (primed = false) or x_i' (primed = true). `var` is 0-based.
struct Term {
  int var = 0;
  bool primed = false;

  auto operator<=>(const Term&) const = default;
};

// src > dst (strict) or src >= dst.
struct Arc {
  Term src;
  Term dst;
  bool strict = false;

  auto operator<=>(const Arc&) const = default;
};

// Textual relation as written by a user: lhs op rhs.
enum class RelOp : std::uint8_t { kLt, kLe, kEq, kGe, kGt };

struct Constraint {
  Term lhs;
  RelOp op = RelOp::kGe;
  Term rhs;

  // One arc for inequalities, two non-strict arcs for equality.
  std::vector<Arc> arcs() const;

  auto operator<=>(const Constraint&) const = default;
};

std::string_view to_string(RelOp op);

// Dense square matrix of relations, indexed [from][to].
class RelMatrix {
 public:
  RelMatrix() = default;
  explicit RelMatrix(int size)
      : size_(size), cells_(static_cast<std::size_t>(size) * size, Rel::kNone) {}

  int size() const { return size_; }
  Rel at(int from, int to) const { return cells_[index(from, to)]; }
  void set(int from, int to, Rel r) { cells_[index(from, to)] = r; }
  // Keeps the stronger of the current and the given relation.
  void strengthen(int from, int to, Rel r) {
    Rel& cell = cells_[index(from, to)];
    cell = stronger(cell, r);
  }
  const std::vector<Rel>& cells() const { return cells_; }

  bool operator==(const RelMatrix&) const = default;
  auto operator<=>(const RelMatrix&) const = default;

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * size_ + to;
  }

  int size_ = 0;
  std::vector<Rel> cells_;
};

// Conjunction of order constraints among the unprimed variables of a point.
struct Invariant {
  std::vector<Arc> constraints;

  bool trivial() const { return constraints.empty(); }
  bool operator==(const Invariant&) const = default;
};

using PointId = std::size_t;

// A monotonicity constraint G: src_point -> dst_point, stored as a labeled
// digraph over the 2n nodes x_1..x_n, x_1'..x_n'. Node k < n is x_{k+1};
// node n + k is x_{k+1}'. Parallel arcs keep the strict label.
class MonotonicityConstraint {
 public:
  MonotonicityConstraint() = default;
  MonotonicityConstraint(std::string id, PointId src, PointId dst, int num_vars)
      : id_(std::move(id)), src_(src), dst_(dst), arcs_(2 * num_vars) {}

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }
  PointId src_point() const { return src_; }
  PointId dst_point() const { return dst_; }
  void set_endpoints(PointId src, PointId dst) {
    src_ = src;
    dst_ = dst;
  }
  bool cyclic() const { return src_ == dst_; }

  int num_vars() const { return arcs_.size() / 2; }
  int node(Term t) const { return t.var + (t.primed ? num_vars() : 0); }
  Term term(int node) const {
    return node < num_vars() ? Term{node, false} : Term{node - num_vars(), true};
  }

  Rel rel(Term a, Term b) const { return arcs_.at(node(a), node(b)); }
  Rel rel(int a, int b) const { return arcs_.at(a, b); }
  // Adds an arc; throws std::out_of_range for a term outside 0..n-1.
  void add(const Arc& arc);
  void add(const Constraint& c);
  bool is_equality(Term a, Term b) const {
    return rel(a, b) != Rel::kNone && rel(b, a) != Rel::kNone;
  }

  std::vector<Arc> arc_list() const;
  const RelMatrix& matrix() const { return arcs_; }
  RelMatrix& mutable_matrix() {
    closed_ = false;
    return arcs_;
  }
  bool closed() const { return closed_; }
  void mark_closed() { closed_ = true; }

  // Structural equality of endpoints and arcs; ids and the closed flag are
  // not compared.
  bool same_graph(const MonotonicityConstraint& other) const {
    return src_ == other.src_ && dst_ == other.dst_ && arcs_ == other.arcs_;
  }

 private:
  std::string id_;
  PointId src_ = 0;
  PointId dst_ = 0;
  RelMatrix arcs_;
  bool closed_ = false;
};

struct FlowPoint {
  std::string name;
  Invariant invariant;
};

struct ConstraintSystem {
  std::vector<std::string> var_names;
  std::vector<FlowPoint> points;
  std::vector<MonotonicityConstraint> mcs;

  int num_vars() const { return static_cast<int>(var_names.size()); }
  std::optional<PointId> find_point(std::string_view name) const;
  std::optional<std::size_t> find_mc(std::string_view id) const;
  // Display name of a term, e.g. "y'".
  std::string term_name(Term t) const;
};

// Default variable names x1..xn.
std::vector<std::string> default_var_names(int n);

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
};

// Structural checks on a system. Never throws; problems are returned.
std::vector<Diagnostic> validate_system(const ConstraintSystem& cs);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace mcsterm

#endif  // MCSTERM_TYPES_HPP_
