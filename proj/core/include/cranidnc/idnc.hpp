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

#include <string>
#include <vector>

#include "cranidnc/model.hpp"
#include "cranidnc/sets.hpp"

namespace cranidnc {

/// A request pairing: user u still wants file f.
struct Association {
    int user = 0;
    int file = 0;
};

/// An XOR-encoded file set kappa together with the users tau that can each
/// immediately extract one new file from it.
struct Combination {
    FileSet kappa;
    UserSet tau;

    bool operator==(const Combination&) const = default;
    bool operator<(const Combination& o) const {
        return kappa != o.kappa ? kappa < o.kappa : tau < o.tau;
    }
    std::string to_string() const { return kappa.to_string('f') + "->" + tau.to_string('u'); }
};

/// True iff user u can decode a new file from kappa: exactly one file of
/// kappa is still wanted and every other one is already held.
bool is_instantly_decodable(FileSet kappa, int u, const SideInformation& side_info);

/// All decodable combinations reachable as cliques of the association graph:
/// associations (u, f in W_u) are joined when two distinct users lost the
/// same file, or when each one's wanted file sits in the other's Has set.
/// Every clique (not only maximal ones) of at most max_degree distinct files
/// yields one (kappa, tau) pair; duplicates collapse. The result is sorted by
/// (kappa, tau). max_degree 0 means unlimited. Raises BudgetError when more
/// than max_combinations distinct pairs arise.
std::vector<Combination> enumerate_combinations(const SideInformation& side_info, int max_degree,
                                                std::size_t max_combinations = 100000);

} // namespace cranidnc
