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

#include <string>

#include "mcsterm/closure.hpp"
#include "mcsterm/types.hpp"

namespace mcsterm {

namespace {

std::string term_label(const ConstraintSystem& cs, Term t) {
  return cs.term_name(t);
}

}  // namespace

std::vector<Diagnostic> validate_system(const ConstraintSystem& cs) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) {
    out.push_back({Severity::kError, std::move(msg)});
  };
  auto warning = [&](std::string msg) {
    out.push_back({Severity::kWarning, std::move(msg)});
  };

  const int n = cs.num_vars();
  if (n < 1) error("system declares no variables");
  if (cs.points.empty()) error("system declares no flow points");

  bool invariants_ok = true;
  for (const FlowPoint& p : cs.points) {
    for (const Arc& a : p.invariant.constraints) {
      for (Term t : {a.src, a.dst}) {
        if (t.var < 0 || t.var >= n) {
          error("invariant of point " + p.name + ": variable index " +
                std::to_string(t.var + 1) + " out of range 1.." +
                std::to_string(n));
          invariants_ok = false;
        } else if (t.primed) {
          error("invariant of point " + p.name + ": primed term in invariant (" +
                term_label(cs, t) + ")");
          invariants_ok = false;
        }
      }
    }
  }

  bool mcs_ok = true;
  for (const MonotonicityConstraint& mc : cs.mcs) {
    if (mc.src_point() >= cs.points.size()) {
      error("mc " + mc.id() + ": source point does not exist");
      mcs_ok = false;
    }
    if (mc.dst_point() >= cs.points.size()) {
      error("mc " + mc.id() + ": target point does not exist");
      mcs_ok = false;
    }
    if (mc.num_vars() != n) {
      mcs_ok = false;
      bool reported = false;
      for (const Arc& a : mc.arc_list()) {
        for (Term t : {a.src, a.dst}) {
          if (t.var >= n) {
            error("mc " + mc.id() + ": variable index " +
                  std::to_string(t.var + 1) + " out of range 1.." +
                  std::to_string(n));
            reported = true;
          }
        }
      }
      if (!reported) {
        error("mc " + mc.id() + ": built over " + std::to_string(mc.num_vars()) +
              " variables, system declares " + std::to_string(n));
      }
    }
  }

  if (n >= 1 && invariants_ok) {
    for (const FlowPoint& p : cs.points) {
      if (!satisfiable(p.invariant, n)) {
        warning("invariant of point " + p.name + " is unsatisfiable");
      }
    }
    if (mcs_ok) {
      for (const MonotonicityConstraint& mc : cs.mcs) {
        if (!close(mc, cs)) warning("mc " + mc.id() + " is unsatisfiable");
      }
    }
  }
  return out;
}

}  // namespace mcsterm
