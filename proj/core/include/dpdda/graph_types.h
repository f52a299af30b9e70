// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPDDA_GRAPH_TYPES_H_
#define DPDDA_GRAPH_TYPES_H_

#include <compare>

namespace dpdda::graph {

// Directed edge from -> to: 'from' is an in-neighbour of 'to', and 'to'
// weights information received from 'from'. Agents are 0-based.
struct Edge {
  int from = 0;
  int to = 0;
  auto operator<=>(const Edge&) const = default;
};

}  // namespace dpdda::graph

#endif  // DPDDA_GRAPH_TYPES_H_
