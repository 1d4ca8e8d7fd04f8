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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "mcsterm/closure.hpp"
#include "mcsterm/dsl.hpp"
#include "mcsterm/elaboration.hpp"
#include "support.hpp"

namespace mcsterm {
namespace {

using testing::Gen;
using testing::Values;

Ordering ord(std::vector<std::vector<int>> blocks) { return Ordering{std::move(blocks)}; }

RelMatrix y_matrix(const std::string& body) {
  return parse_system("vars y1 y2\npoint f\nmc g f -> f { " + body + " }\n")
      .mcs[0]
      .matrix();
}

const MonotonicityConstraint* find_elaborated(const ElaboratedSystem& e,
                                              const Ordering& src,
                                              const Ordering& dst) {
  for (const MonotonicityConstraint& g : e.system.mcs) {
    if (e.ordering[g.src_point()] == src && e.ordering[g.dst_point()] == dst) return &g;
  }
  return nullptr;
}

// The copy of original point f whose ordering holds on v.
PointId copy_for(const ElaboratedSystem& e, PointId f, const Values& v) {
  std::optional<PointId> found;
  for (PointId p : e.phi[f]) {
    if (testing::holds(e.ordering[p].invariant(), v)) {
      EXPECT_FALSE(found.has_value());
      found = p;
    }
  }
  EXPECT_TRUE(found.has_value());
  return *found;
}

Values renamed(const ElaboratedSystem& e, PointId p, const Values& v) {
  Values out;
  for (int x : e.psi(p)) out.push_back(v[x]);
  return out;
}

TEST(Orderings, TwoVariables) {
  const auto os = enumerate_orderings(2);
  ASSERT_EQ(os.size(), 3u);
  EXPECT_EQ(os[0], ord({{0}, {1}}));
  EXPECT_EQ(os[1], ord({{0, 1}}));
  EXPECT_EQ(os[2], ord({{1}, {0}}));
}

TEST(Orderings, CountsMatchRecurrenceAndEnumeration) {
  EXPECT_EQ(enumerate_orderings(1).size(), 1u);
  for (int n = 1; n <= 5; ++n) {
    const std::size_t count = enumerate_orderings(n).size();
    EXPECT_EQ(count, testing::bell_recurrence(n));
    EXPECT_EQ(count, testing::count_weak_orders(n));
    EXPECT_EQ(count, ordered_bell(n));
    EXPECT_LE(count, 2 * std::pow(n, n - 1));
  }
  EXPECT_EQ(enumerate_orderings(3).size(), 13u);
  EXPECT_EQ(enumerate_orderings(4).size(), 75u);
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(ordered_bell(n), testing::bell_recurrence(n));
}

TEST(Orderings, CanonicalDistinctAndSorted) {
  const auto os = enumerate_orderings(4);
  for (std::size_t k = 0; k < os.size(); ++k) {
    std::vector<bool> seen(4, false);
    for (const auto& block : os[k].blocks) {
      ASSERT_FALSE(block.empty());
      EXPECT_TRUE(std::is_sorted(block.begin(), block.end()));
      for (int v : block) {
        EXPECT_FALSE(seen[v]);
        seen[v] = true;
      }
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 4);
    if (k > 0) {
      EXPECT_LT(os[k - 1], os[k]);
    }
  }
}

TEST(Orderings, CapAndDomain) {
  EXPECT_THROW(enumerate_orderings(7), ResourceError);
  EXPECT_EQ(enumerate_orderings(7, 7).size(), ordered_bell(7));
  EXPECT_THROW(enumerate_orderings(0), std::invalid_argument);
}

TEST(Orderings, RenamingAndInvariants) {
  const Ordering o = ord({{2}, {0, 1}});
  EXPECT_EQ(o.num_vars(), 3);
  EXPECT_EQ(o.flatten(), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(o.positions(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(format_ordering(o, {"x", "y", "z"}), "z<x=y");
  EXPECT_TRUE(testing::holds(o.invariant(), Values{1, 1, 0}));
  EXPECT_FALSE(testing::holds(o.invariant(), Values{1, 2, 0}));
  EXPECT_TRUE(testing::holds(o.sorted_invariant(), Values{0, 1, 1}));
  EXPECT_FALSE(testing::holds(o.sorted_invariant(), Values{1, 1, 0}));
}

struct ElaborationExample : ::testing::Test {
  ConstraintSystem cs = parse_system(testing::kElaborationExample);
  ElaboratedSystem e = fully_elaborate(cs);
};

TEST_F(ElaborationExample, ThreePointsNineCandidates) {
  EXPECT_EQ(e.system.points.size(), 3u);
  EXPECT_EQ(e.phi.at(0).size(), 3u);
  EXPECT_EQ(e.candidate_mcs, 9u);
  EXPECT_EQ(e.system.var_names, (std::vector<std::string>{"y1", "y2"}));
  EXPECT_EQ(e.system.points[0].name, "f@x1<x2");
  EXPECT_TRUE(is_fully_elaborated(e.system));
  EXPECT_TRUE(is_stable(e.system));
}

TEST_F(ElaborationExample, ClosedElaboratedMcs) {
  const Ordering lt = ord({{0}, {1}});
  const Ordering eq = ord({{0, 1}});
  const Ordering gt = ord({{1}, {0}});
  const auto* c1 = find_elaborated(e, lt, eq);
  const auto* c2 = find_elaborated(e, lt, gt);
  const auto* c3 = find_elaborated(e, eq, gt);
  ASSERT_TRUE(c1 && c2 && c3);
  EXPECT_EQ(c1->matrix(),
            y_matrix("y1 > y1', y1 > y2', y1' = y2', y2 > y2', y2 > y1, y2 > y1'"));
  EXPECT_EQ(c2->matrix(),
            y_matrix("y1 > y2', y1 > y1', y2 > y1', y2 > y1, y2 > y2', y2' > y1'"));
  EXPECT_EQ(c3->matrix(),
            y_matrix("y1 > y2', y1 > y1', y1 = y2, y2 > y1', y2 > y2', y2' > y1'"));
  EXPECT_EQ(c1->id(), "g@x1<x2@x1=x2");
  for (const auto& g : e.system.mcs) {
    EXPECT_TRUE(g.closed());
    EXPECT_TRUE(has_downward_closure(g));
  }
}

TEST(FullElaboration, AlreadyElaboratedInput) {
  const ConstraintSystem cs = parse_system(
      "vars x1 x2\npoint f inv { x1 < x2 }\nmc g f -> f { x1 > x1', x2 > x2', x1' < x2' }\n");
  const ElaboratedSystem e = fully_elaborate(cs);
  ASSERT_EQ(e.phi[0].size(), 3u);
  int live = 0;
  for (PointId p : e.phi[0]) {
    const bool matches = e.ordering[p] == ord({{0}, {1}});
    EXPECT_EQ(e.consistent[p], matches);
    EXPECT_EQ(e.prunable(p), !matches);
    if (!e.prunable(p)) ++live;
  }
  EXPECT_EQ(live, 1);
  ASSERT_EQ(e.system.mcs.size(), 1u);
  EXPECT_EQ(e.mc_origin[0], 0u);
}

TEST(FullElaboration, OneVariableIsARenaming) {
  const ConstraintSystem cs = testing::loop_system(1, {"x1 > x1'"});
  const ElaboratedSystem e = fully_elaborate(cs);
  ASSERT_EQ(e.system.points.size(), 1u);
  ASSERT_EQ(e.system.mcs.size(), 1u);
  EXPECT_EQ(e.system.mcs[0].matrix(), close(cs.mcs[0])->matrix());
}

TEST(FullElaboration, BudgetAndCap) {
  const ConstraintSystem cs = parse_system(testing::kEx1);
  ElaborationOptions opts;
  opts.budget = 10;
  EXPECT_THROW(fully_elaborate(cs, opts), ResourceError);
  opts = {};
  opts.ordering_cap = 2;
  EXPECT_THROW(fully_elaborate(cs, opts), ResourceError);
}

TEST(Predicates, Ex1IsNotFullyElaborated) {
  const ConstraintSystem cs = parse_system(testing::kEx1);
  EXPECT_FALSE(is_fully_elaborated(cs));
  EXPECT_FALSE(is_stable(cs));
}

TEST(Predicates, DownwardClosure) {
  const Ordering id = ord({{0}, {1}});
  EXPECT_TRUE(has_downward_closure(*close(testing::mc_of(2, "x1 > x1'")), id, id));
  // x1 > x2' without x1 > x1' where x1' < x2' is not downward closed.
  const auto g = *close(testing::mc_of(2, "x1 > x2'"));
  EXPECT_FALSE(has_downward_closure(g, id, id));
  // Taken under the reversed target order, x2' is the smallest.
  EXPECT_TRUE(has_downward_closure(g, id, ord({{1}, {0}})));
  const auto weak = *close(testing::mc_of(2, "x1 >= x2'"));
  EXPECT_FALSE(has_downward_closure(weak, id, id));
  EXPECT_THROW(has_downward_closure(g, ord({{0}}), id), std::invalid_argument);
}

TEST(Stabilize, SctInstanceIsUnchanged) {
  const ConstraintSystem cs = testing::loop_system(2, {"x1 > x1'", "x2 >= x1'"});
  const StabilizedSystem s = stabilize(cs);
  ASSERT_EQ(s.system.points.size(), 1u);
  ASSERT_EQ(s.system.mcs.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(s.system.mcs[k].id(), cs.mcs[k].id());
    EXPECT_TRUE(s.system.mcs[k].same_graph(*close(cs.mcs[k])));
  }
  EXPECT_TRUE(is_stable(s.system));
}

TEST(Stabilize, Ex1RecordsTargetRelations) {
  const ConstraintSystem cs = parse_system(testing::kEx1);
  const StabilizedSystem s = stabilize(cs);
  EXPECT_TRUE(is_stable(s.system));
  EXPECT_LE(s.system.points.size(), ordered_bell(3));
  bool saw_g2 = false;
  for (std::size_t k = 0; k < s.system.mcs.size(); ++k) {
    const MonotonicityConstraint& g = s.system.mcs[k];
    EXPECT_TRUE(g.closed());
    EXPECT_TRUE(close(g, s.system).has_value());
    if (s.mc_origin[k] != 1) continue;
    saw_g2 = true;
    const auto inv = close_invariant(s.system.points[g.dst_point()].invariant, 3);
    ASSERT_TRUE(inv);
    EXPECT_EQ(inv->at(0, 1), Rel::kGt);  // x' > y' recorded as x > y
  }
  EXPECT_TRUE(saw_g2);
}

// Properties on generated systems.

TEST(ElaborationProperty, DeterministicSimulationAndBisimulation) {
  Gen gen(1201);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + gen.below(3);
    const ConstraintSystem cs =
        gen.system(n, 1 + gen.below(2), 1 + gen.below(3), 0.2, 0.15);
    const ElaboratedSystem e = fully_elaborate(cs);
    EXPECT_TRUE(is_fully_elaborated(e.system));
    EXPECT_TRUE(is_stable(e.system));
    for (const auto& g : e.system.mcs) EXPECT_TRUE(has_downward_closure(g));

    const auto states = testing::all_states(n, 3);
    for (PointId f = 0; f < cs.points.size(); ++f) {
      for (const Values& v : states) {
        if (!testing::holds(cs.points[f].invariant, v)) continue;
        std::vector<PointId> matching;
        for (PointId p : e.phi[f]) {
          if (e.consistent[p] &&
              testing::holds(e.system.points[p].invariant, renamed(e, p, v))) {
            matching.push_back(p);
          }
        }
        ASSERT_EQ(matching.size(), 1u);
        EXPECT_EQ(matching[0], copy_for(e, f, v));
      }
    }
    // Every original step maps to an elaborated step from the unique copies
    // and back.
    for (std::size_t k = 0; k < cs.mcs.size(); ++k) {
      const MonotonicityConstraint& g = cs.mcs[k];
      for (const Values& s : states) {
        if (!testing::holds(cs.points[g.src_point()].invariant, s)) continue;
        for (const Values& t : states) {
          if (!testing::holds(cs.points[g.dst_point()].invariant, t)) continue;
          const bool original = testing::holds(g, s, t);
          const PointId p = copy_for(e, g.src_point(), s);
          const PointId q = copy_for(e, g.dst_point(), t);
          bool elaborated = false;
          for (std::size_t j = 0; j < e.system.mcs.size(); ++j) {
            const MonotonicityConstraint& h = e.system.mcs[j];
            if (e.mc_origin[j] != k || h.src_point() != p || h.dst_point() != q) continue;
            elaborated = elaborated || testing::holds(h, renamed(e, p, s), renamed(e, q, t));
          }
          ASSERT_EQ(original, elaborated) << format_system(cs);
        }
      }
    }
  }
}

TEST(StabilizeProperty, StableBoundedAndPathsSatisfiable) {
  Gen gen(1301);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + gen.below(3);
    const ConstraintSystem cs =
        gen.system(n, 1 + gen.below(2), 1 + gen.below(3), 0.2, 0.1);
    const StabilizedSystem s = stabilize(cs);
    EXPECT_TRUE(is_stable(s.system)) << format_system(cs);
    EXPECT_LE(s.system.points.size(), cs.points.size() * ordered_bell(n));
    for (std::size_t k = 0; k < s.system.mcs.size(); ++k) {
      EXPECT_LT(s.mc_origin[k], cs.mcs.size());
    }
    // Every CFG path of length <= 4 has a satisfiable collapse.
    std::function<void(std::vector<std::size_t>&)> extend =
        [&](std::vector<std::size_t>& path) {
          if (!path.empty()) {
            ASSERT_TRUE(collapse(s.system, path).has_value()) << format_system(s.system);
          }
          if (path.size() == 4) return;
          for (std::size_t j = 0; j < s.system.mcs.size(); ++j) {
            if (!path.empty() &&
                s.system.mcs[path.back()].dst_point() != s.system.mcs[j].src_point()) {
              continue;
            }
            path.push_back(j);
            extend(path);
            path.pop_back();
          }
        };
    std::vector<std::size_t> path;
    if (s.system.mcs.size() <= 6) extend(path);
  }
}

}  // namespace
}  // namespace mcsterm
