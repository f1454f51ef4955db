/*
Copyright 2026 the cranidnc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cranidnc/conflict_graph.hpp"

namespace cranidnc {

struct Clique {
    std::vector<int> ids; // ascending
    double weight = 0.0;
};

struct CliqueSearchResult {
    Clique clique;
    bool proven = true; // false when the node budget cut the search short
    std::size_t nodes = 0;
};

/// Repeatedly adds the heaviest vertex compatible with everything picked so
/// far (ties to the lowest id) until no compatible vertex remains. Linear
/// passes over a shrinking candidate set; always returns a maximal clique.
Clique greedy_max_weight_clique(const ConflictGraph& g);

/// Global optimum by branch and bound, seeded with the greedy incumbent.
/// Partitioned graphs branch part by part (pick one vertex or skip), bounded
/// by the heaviest still-compatible vertex of each remaining part;
/// unpartitioned graphs use the classic candidate-sum bound. Ties resolve to
/// the lexicographically smallest id set. Exceeding `node_budget` returns
/// the incumbent with proven=false.
CliqueSearchResult exact_max_weight_clique(const ConflictGraph& g,
                                           std::size_t node_budget = SIZE_MAX);

/// The unpartitioned branch-and-bound, ignoring partition labels even when
/// present. Same contract and tie-breaking as exact_max_weight_clique.
CliqueSearchResult exact_max_weight_clique_unpartitioned(const ConflictGraph& g,
                                                         std::size_t node_budget = SIZE_MAX);

/// Splits the first branching level across `workers` threads; returns the
/// identical optimum (weight and tie-broken id set) as the sequential solver.
CliqueSearchResult exact_max_weight_clique_parallel(const ConflictGraph& g, int workers,
                                                    std::size_t node_budget = SIZE_MAX);

bool is_clique(const ConflictGraph& g, const std::vector<int>& ids);
bool is_maximal_clique(const ConflictGraph& g, const std::vector<int>& ids);

} // namespace cranidnc
