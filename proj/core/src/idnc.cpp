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

#include "cranidnc/idnc.hpp"

#include <algorithm>
#include <set>

namespace cranidnc {

bool is_instantly_decodable(FileSet kappa, int u, const SideInformation& side_info) {
    const FileSet wanted = kappa & side_info.wants[u];
    if (wanted.count() != 1) return false;
    return kappa.minus(side_info.wants[u]).subset_of(side_info.has[u]);
}

namespace {

/// C1: two distinct users lost the same file. C2: each wanted file is held
/// by the other association's user.
bool associations_combinable(const Association& s, const Association& t,
                             const SideInformation& si) {
    if (s.user == t.user) return false;
    if (s.file == t.file) return true;
    return si.has[t.user].contains(s.file) && si.has[s.user].contains(t.file);
}

struct CliqueEnumerator {
    const std::vector<Association>& assoc;
    const std::vector<std::vector<int>>& adj_after; // neighbors with larger index
    int max_degree;
    std::size_t cap;
    std::set<Combination> out;

    void emit(FileSet kappa, UserSet tau) {
        out.insert(Combination{kappa, tau});
        if (out.size() > cap) throw BudgetError("combination budget exceeded (cap " +
                                                std::to_string(cap) + ")");
    }

    void extend(FileSet kappa, UserSet tau, const std::vector<int>& candidates) {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const int v = candidates[i];
            FileSet k = kappa;
            k.add(assoc[v].file);
            if (max_degree > 0 && k.count() > max_degree) continue;
            UserSet t = tau;
            t.add(assoc[v].user);
            emit(k, t);
            // next candidates: later ones that are also neighbors of v
            std::vector<int> next;
            std::set_intersection(candidates.begin() + i + 1, candidates.end(),
                                  adj_after[v].begin(), adj_after[v].end(),
                                  std::back_inserter(next));
            if (!next.empty()) extend(k, t, next);
        }
    }
};

} // namespace

std::vector<Combination> enumerate_combinations(const SideInformation& side_info, int max_degree,
                                                std::size_t max_combinations) {
    std::vector<Association> assoc;
    for (int u = 0; u < side_info.num_users(); ++u)
        side_info.wants[u].for_each([&](int f) { assoc.push_back({u, f}); });

    const int n = static_cast<int>(assoc.size());
    std::vector<std::vector<int>> adj_after(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (associations_combinable(assoc[i], assoc[j], side_info)) adj_after[i].push_back(j);

    CliqueEnumerator en{assoc, adj_after, max_degree, max_combinations, {}};
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    en.extend(FileSet{}, UserSet{}, all);

    return {en.out.begin(), en.out.end()};
}

} // namespace cranidnc
