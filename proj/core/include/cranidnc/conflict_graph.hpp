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

#include <bit>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cranidnc/idnc.hpp"
#include "cranidnc/model.hpp"
#include "cranidnc/power.hpp"

namespace cranidnc {

/// Dynamic bitset sized at construction; adjacency rows and candidate sets.
class Bitmask {
  public:
    Bitmask() = default;
    explicit Bitmask(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    Bitmask& operator&=(const Bitmask& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                fn(wi * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

  private:
    void trim() {
        if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Weighted undirected graph with optional vertex partition labels
/// (RRB index for the per-RRB construction; unpartitioned otherwise).
struct ConflictGraph {
    std::vector<double> weights;
    std::vector<int> parts; // empty when unpartitioned
    std::vector<Bitmask> adj;
    int num_parts = 0;

    std::size_t size() const { return weights.size(); }
    bool partitioned() const { return !parts.empty(); }
    void init_adjacency() { adj.assign(size(), Bitmask(size())); }
    void add_edge(std::size_t i, std::size_t j) {
        adj[i].set(j);
        adj[j].set(i);
    }
    bool adjacent(std::size_t i, std::size_t j) const { return adj[i].test(j); }
};

/// One combination scheduled at one RRH with the rate and power the vertex's
/// own power solve fixed.
struct VertexAssignment {
    int rrh = 0;
    Combination combo;
    double rate = 0.0;
    double power = 0.0;
};

/// A cross-RRH schedule of one RRB: the unit the per-RRB subgraphs are
/// made of.
struct ScheduleVertex {
    int rrb = 0;
    std::vector<VertexAssignment> assignments; // ascending RRH
    double weight = 0.0;
    UserSet users_total;

    UserSet users_at(int rrh) const {
        for (const auto& a : assignments)
            if (a.rrh == rrh) return a.combo.tau;
        return {};
    }
    std::string to_string() const;
};

struct SubgraphOptions {
    /// Drop partially silent vertices that some idle RRH could still serve
    /// (they are weakly dominated by their extensions).
    bool prune_silent_dominated = false;
    std::size_t max_vertices = 200000;
};

/// All cross-RRH schedules of RRB z: every nonempty RRH subset crossed with
/// every assignment of pairwise target-disjoint combinations, each with its
/// powers fixed by `power_solver`, its per-RRH rate set to the weakest
/// targeted user's capacity, and weight sum |tau|*rate.
std::vector<ScheduleVertex> build_power_subgraph(const Instance& instance, int rrb,
                                                 const std::vector<Combination>& combos,
                                                 const PowerSolver& power_solver,
                                                 const SubgraphOptions& options = {});

/// Cross-RRB compatibility: every user targeted by both vertices must be
/// served by the same RRH in both. Callers guarantee v.rrb != w.rrb.
bool cran_idnc_adjacent(const ScheduleVertex& v, const ScheduleVertex& w);

struct CranIdncGraph {
    ConflictGraph graph;
    std::vector<ScheduleVertex> vertices;
};

/// Union of the Z per-RRB subgraphs; edges only across RRBs, so the graph is
/// Z-partite with the RRB index as the partition label.
CranIdncGraph build_cran_idnc_graph(const Instance& instance,
                                    const std::vector<Combination>& combos,
                                    const PowerSolver& power_solver,
                                    const SubgraphOptions& options = {});

/// Fixed-power scheduling vertex: user u obtains file f on RRB (b, z) at
/// candidate rate r; the vertex weighs its own rate.
struct FixedPowerVertex {
    int rrh = 0, rrb = 0, user = 0, file = 0;
    double rate = 0.0;
    std::string to_string() const;
};

struct CoordinatedGraph {
    ConflictGraph graph;
    std::vector<FixedPowerVertex> vertices;
};

/// Fixed-power coordinated scheduling graph at power matrix p. One vertex
/// per (b, z, u, f in W_u, r) with r drawn from the RRB's positive rate
/// candidates not exceeding the user's own capacity. Within one RRB of one
/// RRH, vertices join when their request pairs are combinable and the rates
/// match; across RRBs, when the users differ or the RRH is shared.
CoordinatedGraph build_coordinated_graph(const Instance& instance, const PowerMatrix& p);

/// Recomputes rates and weight of a vertex from its stored powers and
/// checks distinct RRHs, disjoint target sets, and rate feasibility.
/// Throws ValidationError naming the violated condition.
void validate_schedule_vertex(const Instance& instance, const ScheduleVertex& v);

/// Checks that a clique of the coordinated graph is a feasible fixed-power
/// schedule: one RRH per user, one rate per RRB, every targeted user able to
/// decode the RRB's file union at a rate within its capacity.
void validate_coordinated_clique(const Instance& instance, const PowerMatrix& p,
                                 const std::vector<FixedPowerVertex>& vertices,
                                 const std::vector<int>& clique_ids);

/// True when no idle RRH could still be assigned a combination disjoint
/// from the vertex's targets (the "full" schedules a schedule table lists).
bool assignment_is_maximal(const ScheduleVertex& v, const std::vector<Combination>& combos,
                           int num_rrhs);

/// Edge-list text dump: '#'-prefixed header lines with one vertex descriptor
/// per line, then one "i j" pair per edge.
void dump_graph(std::ostream& os, const ConflictGraph& g,
                const std::function<std::string(std::size_t)>& describe);

} // namespace cranidnc
