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

#include "cranidnc/clique.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace cranidnc {

namespace {

bool lex_smaller(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Incumbent {
    const ConflictGraph* g = nullptr;
    std::vector<int> ids;
    double weight = 0.0;

    /// Weights are recomputed over the sorted id set so every solver reports
    /// bit-identical totals for identical cliques, whatever its DFS
    /// accumulation order was.
    double canonical_weight(const std::vector<int>& cand_ids) const {
        double w = 0.0;
        for (int v : cand_ids) w += g->weights[v];
        return w;
    }

    void offer(const std::vector<int>& cand_ids) {
        const double w = canonical_weight(cand_ids);
        if (w > weight || (w == weight && lex_smaller(cand_ids, ids))) {
            ids = cand_ids;
            weight = w;
        }
    }
};

struct PartitionedSearch {
    const ConflictGraph& g;
    std::vector<std::vector<int>> order; // per part, descending weight then ascending id
    std::size_t budget;
    std::size_t nodes = 0;
    bool proven = true;
    Incumbent best;
    std::vector<int> cur;

    explicit PartitionedSearch(const ConflictGraph& graph, std::size_t node_budget)
        : g(graph), budget(node_budget) {
        order.resize(g.num_parts);
        for (std::size_t v = 0; v < g.size(); ++v) order[g.parts[v]].push_back(static_cast<int>(v));
        for (auto& part : order)
            std::stable_sort(part.begin(), part.end(),
                             [&](int a, int b) { return g.weights[a] > g.weights[b]; });
    }

    void dfs(int part, const Bitmask& cand, double cur_w) {
        if (!proven) return;
        if (++nodes > budget) {
            proven = false;
            return;
        }
        if (part == g.num_parts) {
            std::vector<int> ids = cur;
            std::sort(ids.begin(), ids.end());
            best.offer(ids);
            return;
        }
        // Optimistic completion: the heaviest still-compatible vertex of each
        // remaining part. Strict pruning keeps tie-breaking canonical.
        double bound = cur_w;
        for (int q = part; q < g.num_parts; ++q) {
            for (int v : order[q]) {
                if (cand.test(v)) {
                    bound += g.weights[v];
                    break;
                }
            }
        }
        if (bound < best.weight) return;

        for (int v : order[part]) {
            if (!cand.test(v)) continue;
            Bitmask next = cand;
            next &= g.adj[v];
            cur.push_back(v);
            dfs(part + 1, next, cur_w + g.weights[v]);
            cur.pop_back();
            if (!proven) return;
        }
        dfs(part + 1, cand, cur_w); // leave this part unscheduled
    }
};

struct GenericSearch {
    const ConflictGraph& g;
    std::size_t budget;
    std::size_t nodes = 0;
    bool proven = true;
    Incumbent best;
    std::vector<int> cur;

    GenericSearch(const ConflictGraph& graph, std::size_t node_budget)
        : g(graph), budget(node_budget) {}

    void dfs(const Bitmask& cand, double cur_w) {
        if (!proven) return;
        if (++nodes > budget) {
            proven = false;
            return;
        }
        {
            std::vector<int> ids = cur;
            std::sort(ids.begin(), ids.end());
            best.offer(ids);
        }
        std::vector<int> list;
        cand.for_each_set([&](std::size_t v) { list.push_back(static_cast<int>(v)); });
        if (list.empty()) return;
        std::vector<double> suffix(list.size() + 1, 0.0);
        for (std::size_t i = list.size(); i-- > 0;) suffix[i] = suffix[i + 1] + g.weights[list[i]];

        for (std::size_t i = 0; i < list.size(); ++i) {
            if (cur_w + suffix[i] < best.weight) return; // nothing left can win
            const int v = list[i];
            Bitmask next = cand;
            next &= g.adj[v];
            for (std::size_t j = 0; j <= i; ++j) next.reset(list[j]); // enumerate ascending once
            cur.push_back(v);
            dfs(next, cur_w + g.weights[v]);
            cur.pop_back();
            if (!proven) return;
        }
    }
};

Incumbent greedy_incumbent(const ConflictGraph& g) {
    Incumbent inc;
    inc.g = &g;
    Clique c = greedy_max_weight_clique(g);
    inc.ids = c.ids;
    inc.weight = inc.canonical_weight(c.ids);
    return inc;
}

} // namespace

Clique greedy_max_weight_clique(const ConflictGraph& g) {
    Clique c;
    if (g.size() == 0) return c;
    Bitmask cand(g.size());
    cand.set_all();
    while (cand.any()) {
        int pick = -1;
        double w = -std::numeric_limits<double>::infinity();
        cand.for_each_set([&](std::size_t v) {
            if (g.weights[v] > w) {
                w = g.weights[v];
                pick = static_cast<int>(v);
            }
        });
        c.ids.push_back(pick);
        cand &= g.adj[pick];
    }
    std::sort(c.ids.begin(), c.ids.end());
    for (int v : c.ids) c.weight += g.weights[v]; // canonical summation order
    return c;
}

CliqueSearchResult exact_max_weight_clique(const ConflictGraph& g, std::size_t node_budget) {
    if (!g.partitioned()) return exact_max_weight_clique_unpartitioned(g, node_budget);
    PartitionedSearch search(g, node_budget);
    search.best = greedy_incumbent(g);
    Bitmask cand(g.size());
    cand.set_all();
    search.dfs(0, cand, 0.0);
    return {{search.best.ids, search.best.weight}, search.proven, search.nodes};
}

CliqueSearchResult exact_max_weight_clique_unpartitioned(const ConflictGraph& g,
                                                         std::size_t node_budget) {
    GenericSearch search(g, node_budget);
    search.best = greedy_incumbent(g);
    Bitmask cand(g.size());
    cand.set_all();
    search.dfs(cand, 0.0);
    return {{search.best.ids, search.best.weight}, search.proven, search.nodes};
}

CliqueSearchResult exact_max_weight_clique_parallel(const ConflictGraph& g, int workers,
                                                    std::size_t node_budget) {
    if (g.size() == 0 || workers <= 1) return exact_max_weight_clique(g, node_budget);

    const Incumbent seed = greedy_incumbent(g);
    struct Task {
        int root; // -1 = the all-skip / empty-start branch
    };
    std::vector<Task> tasks;
    std::vector<int> first_level;
    if (g.partitioned()) {
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.parts[v] == 0) first_level.push_back(static_cast<int>(v));
    } else {
        first_level.resize(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) first_level[v] = static_cast<int>(v);
    }
    for (int v : first_level) tasks.push_back({v});
    tasks.push_back({-1});

    struct TaskResult {
        Incumbent inc;
        bool proven = true;
        std::size_t nodes = 0;
    };
    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> cursor{0};

    auto run_task = [&](std::size_t ti) {
        const Task& task = tasks[ti];
        TaskResult out;
        if (g.partitioned()) {
            PartitionedSearch search(g, node_budget);
            search.best = seed;
            Bitmask cand(g.size());
            cand.set_all();
            if (task.root >= 0) {
                cand &= g.adj[task.root];
                search.cur.push_back(task.root);
                search.dfs(1, cand, g.weights[task.root]);
            } else {
                search.dfs(1, cand, 0.0); // part 0 unscheduled
            }
            out = {search.best, search.proven, search.nodes};
        } else {
            GenericSearch search(g, node_budget);
            search.best = seed;
            if (task.root >= 0) {
                Bitmask cand(g.size());
                cand.set_all();
                cand &= g.adj[task.root];
                for (int j = 0; j <= task.root; ++j) cand.reset(j);
                search.cur.push_back(task.root);
                search.dfs(cand, g.weights[task.root]);
            } else {
                search.best.offer({});
            }
            out = {search.best, search.proven, search.nodes};
        }
        results[ti] = std::move(out);
    };

    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(workers, tasks.size());
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1))
                run_task(i);
        });
    }
    for (auto& th : pool) th.join();

    CliqueSearchResult final_result;
    Incumbent best = seed;
    for (const TaskResult& r : results) {
        best.offer(r.inc.ids);
        final_result.proven = final_result.proven && r.proven;
        final_result.nodes += r.nodes;
    }
    final_result.clique = {best.ids, best.weight};
    return final_result;
}

bool is_clique(const ConflictGraph& g, const std::vector<int>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (!g.adjacent(ids[i], ids[j])) return false;
            if (g.partitioned() && g.parts[ids[i]] == g.parts[ids[j]]) return false;
        }
    }
    return true;
}

bool is_maximal_clique(const ConflictGraph& g, const std::vector<int>& ids) {
    if (!is_clique(g, ids)) return false;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (std::find(ids.begin(), ids.end(), static_cast<int>(v)) != ids.end()) continue;
        bool extends = true;
        for (int u : ids)
            if (!g.adjacent(v, u)) {
                extends = false;
                break;
            }
        if (extends) return false;
    }
    return true;
}

} // namespace cranidnc
