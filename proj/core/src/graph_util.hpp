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

#ifndef MCSTERM_SRC_GRAPH_UTIL_HPP_
#define MCSTERM_SRC_GRAPH_UTIL_HPP_

#include <vector>

namespace mcsterm::detail {

struct Components {
  // component[v] for every node; components are numbered in reverse
  // topological order of the condensation (sinks first).
  std::vector<int> component;
  int count = 0;
};

// Tarjan's algorithm. `succ[v]` lists successors of v; visiting order is
// node index order, so the numbering is deterministic.
Components strongly_connected_components(
    const std::vector<std::vector<int>>& succ);

}  // namespace mcsterm::detail

#endif  // MCSTERM_SRC_GRAPH_UTIL_HPP_
