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

// Text formats: constraint systems, MCs, ranking functions.
//
// System syntax:
//
//   # comment
//   vars x y z
//   point f inv { x < y }
//   mc g f -> f { x < y, z = y', x' > z' }
//
// Ranking syntax:
//
//   bound 1
//   point f
//     if y > x -> <1, z>
//     if y <= x -> <0, z>

#ifndef MCSTERM_DSL_HPP_
#define MCSTERM_DSL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "mcsterm/types.hpp"
#include "mcsterm/verdict.hpp"

namespace mcsterm {

// 1-based position of a token in the input.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message);

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

ConstraintSystem parse_system(std::string_view text);
std::string format_system(const ConstraintSystem& cs);

// {x<y, z=y', x'>z'}: one item per related pair of terms.
std::string format_mc(const MonotonicityConstraint& mc,
                      const std::vector<std::string>& var_names);
std::string format_invariant(const Invariant& inv,
                             const std::vector<std::string>& var_names);

std::string format_vector(const RankVector& v,
                          const std::vector<std::string>& var_names);
std::string format_guard(const Guard& g,
                         const std::vector<std::string>& var_names);

// Point names and variables are resolved against `cs`. Points without a
// `point` block get no rows.
RankingFunction parse_ranking(std::string_view text, const ConstraintSystem& cs);
std::string format_ranking(const RankingFunction& r, const ConstraintSystem& cs);

}  // namespace mcsterm

#endif  // MCSTERM_DSL_HPP_
