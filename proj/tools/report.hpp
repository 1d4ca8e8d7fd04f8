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

#ifndef MCSTERM_TOOLS_REPORT_HPP_
#define MCSTERM_TOOLS_REPORT_HPP_

#include <string>

#include "json.hpp"
#include "mcsterm/oracle.hpp"
#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm::tools {

nlohmann::json ranking_json(const RankingFunction& r, const ConstraintSystem& cs);
nlohmann::json witness_json(const Witness& w, const ConstraintSystem& cs);
nlohmann::json symbolic_json(const SymbolicReport& r);
nlohmann::json numeric_json(const NumericReport& r, int domain);

// "{z>z'} at f, cycle g2" style one-liners.
std::string witness_text(const Witness& w, const ConstraintSystem& cs);
std::string symbolic_text(const SymbolicReport& r);
std::string numeric_text(const NumericReport& r, int domain);

}  // namespace mcsterm::tools

#endif  // MCSTERM_TOOLS_REPORT_HPP_
