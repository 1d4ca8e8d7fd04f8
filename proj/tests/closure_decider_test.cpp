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

#include <algorithm>
#include <set>
#include <tuple>

#include "mcsterm/closure.hpp"
#include "mcsterm/closure_decider.hpp"
#include "mcsterm/dsl.hpp"
#include "mcsterm/oracle.hpp"
#include "support.hpp"

namespace mcsterm {
namespace {

using testing::Gen;
using testing::mc_of;

using MemberKey = std::tuple<PointId, PointId, RelMatrix>;

// Saturation by composing every pair of members until nothing changes,
// using the reference closure.
std::set<MemberKey> naive_closure_set(const ConstraintSystem& cs) {
  const int n = cs.num_vars();
  std::set<MemberKey> out;
  for (const MonotonicityConstraint& g : cs.mcs) {
    auto m = testing::ref_close(g, cs.points[g.src_point()].invariant,
                                cs.points[g.dst_point()].invariant);
    if (m) out.insert({g.src_point(), g.dst_point(), *m});
  }
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<MemberKey> current(out.begin(), out.end());
    for (const auto& [s1, d1, m1] : current) {
      for (const auto& [s2, d2, m2] : current) {
        if (d1 != s2) continue;
        MonotonicityConstraint a("a", s1, d1, n);
        MonotonicityConstraint b("b", s2, d2, n);
        a.mutable_matrix() = m1;
        b.mutable_matrix() = m2;
        auto c = testing::ref_compose(a, b, cs.points[d1].invariant);
        if (c && out.insert({s1, d2, *c}).second) changed = true;
      }
    }
  }
  return out;
}

std::set<MemberKey> keys(const ClosureSet& set) {
  std::set<MemberKey> out;
  for (const ClosureMember& m : set.members) {
    out.insert({m.mc.src_point(), m.mc.dst_point(), m.mc.matrix()});
  }
  return out;
}

bool contains(const ClosureSet& set, const MonotonicityConstraint& g) {
  return std::any_of(set.members.begin(), set.members.end(),
                     [&](const ClosureMember& m) { return m.mc.same_graph(g); });
}

// The walk is closed, uses only edges of the circular variant, has a strict
// arc, and its shortcut balance is not positive.
void expect_valid_cycle(const MonotonicityConstraint& g,
                        const std::vector<CircularEdge>& cycle) {
  ASSERT_FALSE(cycle.empty());
  const CircularVariant cv(g);
  int balance = 0;
  bool strict = false;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const CircularEdge& e = cycle[k];
    EXPECT_NE(std::find(cv.edges().begin(), cv.edges().end(), e), cv.edges().end());
    EXPECT_EQ(e.to, cycle[(k + 1) % cycle.size()].from);
    balance += shortcut_weight(e.kind);
    strict = strict || e.kind == CircularEdgeKind::kStrict;
  }
  EXPECT_TRUE(strict);
  EXPECT_LE(balance, 0);
}

TEST(ClosureSet, Ex1MatchesNaiveSaturation) {
  const ConstraintSystem cs = parse_system(testing::kEx1);
  const ClosureSet set = closure_set(cs, {});
  EXPECT_EQ(keys(set), naive_closure_set(cs));
  const MonotonicityConstraint& g1 = cs.mcs[0];
  const MonotonicityConstraint& g2 = cs.mcs[1];
  EXPECT_TRUE(contains(set, *close(g1)));
  EXPECT_TRUE(contains(set, *close(g2)));
  EXPECT_TRUE(contains(set, *compose(g1, g1)));
  EXPECT_TRUE(contains(set, *compose(g1, g2)));
  if (auto g2g2 = compose(g2, g2)) {
    EXPECT_TRUE(contains(set, *g2g2));
  }
  for (const ClosureMember& m : set.members) {
    for (std::size_t k = 0; k + 1 < m.provenance.size(); ++k) {
      EXPECT_FALSE(m.provenance[k] == 1 && m.provenance[k + 1] == 0);
    }
  }
}

TEST(ClosureSet, InSituDescentIsItsOwnClosure) {
  const ConstraintSystem cs = testing::loop_system(1, {"x1 > x1'"});
  const ClosureSet set = closure_set(cs, {});
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.members[0].mc.matrix(), close(cs.mcs[0])->matrix());
}

TEST(ClosureSet, CrossingLoopDoesNotCompose) {
  const ConstraintSystem cs = testing::loop_system(2, {"x1 > x2, x2' > x1'"});
  EXPECT_FALSE(testing::ref_compose(cs.mcs[0], cs.mcs[0]).has_value());
  const ClosureSet set = closure_set(cs, {});
  ASSERT_EQ(set.size(), 1u);
  EXPECT_TRUE(set.members[0].mc.same_graph(*close(cs.mcs[0])));
}

TEST(ClosureSet, BudgetIsEnforced) {
  const ConstraintSystem cs = parse_system(testing::kEx1);
  ClosureOptions opts;
  opts.budget = 2;
  EXPECT_THROW(closure_set(cs, opts), ResourceError);
  EXPECT_THROW(decide_closure(cs, opts), ResourceError);
}

TEST(ClosureSet, UnsatisfiableGeneratorsAreSkipped) {
  const ConstraintSystem cs = testing::loop_system(1, {"x1 > x1', x1' > x1", "x1 >= x1'"});
  const ClosureSet set = closure_set(cs, {});
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.members[0].provenance, std::vector<std::size_t>{1});
}

TEST(ClosureOptions, SubsumptionWithIdempotentOnlyIsRejected) {
  ClosureOptions opts;
  opts.subsumption = true;
  opts.idempotent_only = true;
  EXPECT_THROW(check_options(opts), ConfigError);
  const ConstraintSystem cs = parse_system(testing::kEx1);
  try {
    decide_closure(cs, opts);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("idempotent"), std::string::npos);
  }
}

TEST(CircularVariant, AddsShortcutsForEveryVariable) {
  const CircularVariant cv(*close(mc_of(2, "x1 > x2'")));
  int forward = 0;
  int backward = 0;
  for (const CircularEdge& e : cv.edges()) {
    if (e.kind == CircularEdgeKind::kShortcutForward) {
      ++forward;
      EXPECT_EQ(e.to, e.from + 2);
    }
    if (e.kind == CircularEdgeKind::kShortcutBackward) {
      ++backward;
      EXPECT_EQ(e.from, e.to + 2);
    }
  }
  EXPECT_EQ(forward, 2);
  EXPECT_EQ(backward, 2);
  EXPECT_EQ(shortcut_weight(CircularEdgeKind::kShortcutForward), 1);
  EXPECT_EQ(shortcut_weight(CircularEdgeKind::kShortcutBackward), -1);
  EXPECT_EQ(shortcut_weight(CircularEdgeKind::kStrict), 0);
}

TEST(LocalTerminationTest, InSituDescentPasses) {
  const auto g = *close(mc_of(1, "x1 > x1'"));
  const LttResult r = local_termination_test(g);
  EXPECT_TRUE(r.pass);
  expect_valid_cycle(g, r.cycle);
}

TEST(LocalTerminationTest, NonStrictFails) {
  EXPECT_FALSE(local_termination_test(*close(mc_of(1, "x1 >= x1'"))).pass);
}

TEST(LocalTerminationTest, CrossingLoopPassesThroughBalancedCycle) {
  const auto g = *close(mc_of(2, "x1 > x2, x2' > x1'"));
  const LttResult r = local_termination_test(g);
  ASSERT_TRUE(r.pass);
  expect_valid_cycle(g, r.cycle);
  EXPECT_TRUE(ltt_bruteforce(g));
}

TEST(LocalTerminationTest, IdempotentWithoutInSituDescent) {
  const MonotonicityConstraint raw = mc_of(3, "x1 < x2, x3 > x2', x1' > x3'");
  const auto ref = testing::ref_close(raw);
  ASSERT_TRUE(ref);
  const auto g = *close(raw);
  EXPECT_EQ(g.matrix(), *ref);
  EXPECT_EQ(testing::ref_compose(g, g), std::optional<RelMatrix>(g.matrix()));
  EXPECT_TRUE(idempotent(g));
  for (int i = 0; i < 3; ++i) {
    EXPECT_NE(g.rel(Term{i, false}, Term{i, true}), Rel::kGt);
  }
  const LttResult r = local_termination_test(g);
  ASSERT_TRUE(r.pass);
  expect_valid_cycle(g, r.cycle);
  EXPECT_TRUE(ltt_bruteforce(g));
  EXPECT_FALSE(sagiv_test(g));
}

TEST(SagivTest, Examples) {
  EXPECT_TRUE(sagiv_test(*close(mc_of(1, "x1 > x1'"))));
  EXPECT_FALSE(sagiv_test(*close(mc_of(1, "x1 >= x1'"))));
  const auto crossing = *close(mc_of(2, "x1 > x2, x2' > x1'"));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(crossing.rel(Term{i, false}, Term{j, true}), Rel::kNone);
    }
  }
  EXPECT_FALSE(sagiv_test(crossing));
  EXPECT_TRUE(local_termination_test(crossing).pass);
  EXPECT_TRUE(sagiv_test(*close(mc_of(2, "x1 > x2', x2 >= x1'"))));
}

TEST(DecideClosure, Ex1Terminates) {
  const Verdict v = decide_closure(parse_system(testing::kEx1), {});
  EXPECT_TRUE(v.terminating());
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_FALSE(v.ranking.has_value());
  EXPECT_GT(v.stats.closure_set_size, 0u);
}

TEST(DecideClosure, Ex1ScgDoesNotTerminate) {
  const ConstraintSystem cs = parse_system(testing::kEx1Scg);
  const Verdict v = decide_closure(cs, {});
  ASSERT_FALSE(v.terminating());
  ASSERT_TRUE(v.witness);
  EXPECT_FALSE(local_termination_test(v.witness->mc).pass);
  std::vector<std::size_t> path;
  for (const std::string& id : v.witness->cycle) path.push_back(*cs.find_mc(id));
  const auto collapsed = collapse(cs, path);
  ASSERT_TRUE(collapsed);
  EXPECT_TRUE(collapsed->same_graph(v.witness->mc));
}

TEST(DecideClosure, NonStrictLoopWitnessIsTheLoop) {
  const ConstraintSystem cs = testing::loop_system(1, {"x1 >= x1'"});
  const Verdict v = decide_closure(cs, {});
  ASSERT_FALSE(v.terminating());
  EXPECT_EQ(v.witness->cycle, std::vector<std::string>{"g1"});
  EXPECT_TRUE(v.witness->mc.same_graph(*close(cs.mcs[0])));
}

TEST(DecideClosure, AcyclicSystemTerminates) {
  const ConstraintSystem cs =
      parse_system("vars x\npoint a\npoint b\nmc g a -> b { }\n");
  EXPECT_TRUE(decide_closure(cs, {}).terminating());
}

// Properties on generated systems.

TEST(ClosureSetProperty, MatchesNaiveSaturationAndProvenance) {
  Gen gen(606);
  for (int trial = 0; trial < 150; ++trial) {
    const ConstraintSystem cs = gen.system(1 + gen.below(3), 1 + gen.below(3),
                                           1 + gen.below(3), 0.2, 0.15);
    const ClosureSet set = closure_set(cs, {});
    EXPECT_EQ(keys(set), naive_closure_set(cs)) << format_system(cs);
    for (const ClosureMember& m : set.members) {
      const auto c = collapse(cs, m.provenance);
      ASSERT_TRUE(c);
      EXPECT_TRUE(c->same_graph(m.mc));
    }
  }
}

TEST(DecideClosureProperty, OptionsPreserveVerdict) {
  Gen gen(707);
  for (int trial = 0; trial < 300; ++trial) {
    const ConstraintSystem cs = gen.system(1 + gen.below(3), 1 + gen.below(3),
                                           1 + gen.below(4), 0.25);
    const bool plain = decide_closure(cs, {}).terminating();
    ClosureOptions sub;
    sub.subsumption = true;
    EXPECT_EQ(decide_closure(cs, sub).terminating(), plain) << format_system(cs);
    ClosureOptions idem;
    idem.idempotent_only = true;
    EXPECT_EQ(decide_closure(cs, idem).terminating(), plain) << format_system(cs);
  }
}

TEST(DecideClosureProperty, IndependentOfMcOrder) {
  Gen gen(808);
  for (int trial = 0; trial < 200; ++trial) {
    ConstraintSystem cs = gen.system(1 + gen.below(3), 1 + gen.below(2),
                                     2 + gen.below(3), 0.25);
    const bool forward = decide_closure(cs, {}).terminating();
    std::reverse(cs.mcs.begin(), cs.mcs.end());
    EXPECT_EQ(decide_closure(cs, {}).terminating(), forward);
  }
}

TEST(DecideClosureProperty, WitnessesFailLtt) {
  Gen gen(909);
  int witnesses = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ConstraintSystem cs = gen.system(1 + gen.below(3), 1 + gen.below(2),
                                           1 + gen.below(3), 0.2);
    const Verdict v = decide_closure(cs, {});
    if (v.terminating()) continue;
    ASSERT_TRUE(v.witness);
    ++witnesses;
    EXPECT_TRUE(v.witness->mc.cyclic());
    EXPECT_FALSE(local_termination_test(v.witness->mc).pass);
    for (int k = 1; k <= 8; ++k) EXPECT_TRUE(satisfiable_power(v.witness->mc, k));
  }
  EXPECT_GT(witnesses, 20);
}

}  // namespace
}  // namespace mcsterm
