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

#include "report.hpp"

#include "mcsterm/dsl.hpp"

namespace mcsterm::tools {

namespace {

std::string values_text(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(v[k]);
  }
  return out + ")";
}

}  // namespace

nlohmann::json ranking_json(const RankingFunction& r, const ConstraintSystem& cs) {
  nlohmann::json points = nlohmann::json::array();
  for (PointId p = 0; p < r.rows.size(); ++p) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RankRow& row : r.rows[p]) {
      rows.push_back({{"guard", format_guard(row.guard, cs.var_names)},
                      {"vector", format_vector(row.vector, cs.var_names)}});
    }
    points.push_back({{"point", cs.points.at(p).name}, {"rows", rows}});
  }
  return {{"bound", r.bound}, {"points", points}};
}

nlohmann::json witness_json(const Witness& w, const ConstraintSystem& cs) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : w.mc.arc_list()) {
    arcs.push_back({{"src", cs.term_name(a.src)},
                    {"dst", cs.term_name(a.dst)},
                    {"strict", a.strict}});
  }
  return {{"mc", format_mc(w.mc, cs.var_names)},
          {"point", cs.points.at(w.mc.src_point()).name},
          {"arcs", arcs},
          {"cycle", w.cycle}};
}

nlohmann::json symbolic_json(const SymbolicReport& r) {
  nlohmann::json mcs = nlohmann::json::array();
  for (const McCheck& c : r.mcs) {
    nlohmann::json item = {{"mc", c.mc_id}, {"ok", c.ok}, {"cases", c.cases}};
    if (c.src_row) item["src_row"] = *c.src_row + 1;
    if (c.dst_row) item["dst_row"] = *c.dst_row + 1;
    mcs.push_back(item);
  }
  return {{"valid", r.valid()}, {"mcs", mcs}};
}

nlohmann::json numeric_json(const NumericReport& r, int domain) {
  nlohmann::json out = {{"valid", r.valid}, {"domain", domain},
                        {"transitions", r.transitions}};
  if (r.counterexample) {
    out["counterexample"] = {{"mc", r.counterexample->mc_id},
                             {"src", r.counterexample->src},
                             {"dst", r.counterexample->dst},
                             {"reason", r.counterexample->reason}};
  }
  return out;
}

std::string witness_text(const Witness& w, const ConstraintSystem& cs) {
  std::string cycle;
  for (std::size_t k = 0; k < w.cycle.size(); ++k) {
    if (k > 0) cycle += " ";
    cycle += w.cycle[k];
  }
  return format_mc(w.mc, cs.var_names) + " at " +
         cs.points.at(w.mc.src_point()).name + ", cycle " + cycle;
}

std::string symbolic_text(const SymbolicReport& r) {
  if (r.valid()) return "passed";
  for (const McCheck& c : r.mcs) {
    if (c.ok) continue;
    return "failed on " + c.mc_id + " (row " + std::to_string(*c.src_row + 1) +
           " -> row " + std::to_string(*c.dst_row + 1) + ")";
  }
  return "failed";
}

std::string numeric_text(const NumericReport& r, int domain) {
  const std::string where = " over {0.." + std::to_string(domain) + "}";
  if (r.valid) {
    return "passed" + where + " (" + std::to_string(r.transitions) + " transitions)";
  }
  const Counterexample& c = *r.counterexample;
  return "failed" + where + " on " + c.mc_id + ": " + values_text(c.src) + " -> " +
         values_text(c.dst) + ", " + c.reason;
}

}  // namespace mcsterm::tools
