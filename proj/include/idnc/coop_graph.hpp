#ifndef IDNC_COOP_GRAPH_HPP_
#define IDNC_COOP_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "idnc/local_graph.hpp"

namespace idnc {

/// Cluster of mutually coverage-overlapping transmitters treated as one
/// virtual device in the extended cooperation graph. Singleton clusters make
/// up the plain cooperation graph. Each member carries its best combination
/// computed on the local graph that omits the cluster's members and the
/// devices it interferes.
struct Cluster {
    std::vector<DeviceId> members;  // sorted
    Bitset member_mask;
    Bitset coverage;            // union of member coverage zones
    Bitset wanting_coverage;    // coverage restricted to wanting devices
    Bitset interfered;          // wanting non-members hearing >= 2 members
    std::vector<PlanEntry> entries;  // one per member, member order
};

/// Weight constant separating the covered-critical count from the log-erasure
/// refinement in the coverage component of the selection weight.
inline constexpr double kCoverageUnit = 1048576.0;  // 2^20, exactly representable

struct CoopVertex {
    Cluster cluster;
    TripleWeight weight;  // (critical gain, coverage score, support gain)
    bool has_targets = false;
};

struct CooperationGraph {
    std::vector<CoopVertex> vertices;
    std::vector<Bitset> adj;

    WeightedGraphT<TripleWeight> as_weighted() const {
        WeightedGraphT<TripleWeight> g(static_cast<int>(vertices.size()));
        for (size_t i = 0; i < vertices.size(); ++i) {
            g.weights[i] = vertices[i].weight;
            for (size_t j = i + 1; j < vertices.size(); ++j)
                if (adj[i].test(static_cast<int>(j)))
                    g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
        return g;
    }
};

namespace detail {

/// Candidate transmitter pool: devices that hold at least one file, are not
/// critical (unless `allow_critical`, the fallback mode), and either have an
/// eligible local-graph vertex or cover some critical device (pure coverage
/// helpers keep unservable critical devices inside a single hearing zone).
inline std::vector<DeviceId> transmitter_pool(const NetworkState& state, const RoundContext& ctx,
                                              bool allow_critical) {
    std::vector<DeviceId> pool;
    for (DeviceId u = 0; u < state.num_devices(); ++u) {
        if (!state.has_mask(u).any()) continue;
        if (!allow_critical && ctx.is_critical(u)) continue;
        bool eligible = false;
        bool covers_critical = false;
        for (DeviceId v : state.coverage_list(u)) {
            if (v == u) continue;
            if (ctx.is_critical(v)) covers_critical = true;
            if (state.wants_mask(v).any() && intersects(state.wants_mask(v), state.has_mask(u)))
                eligible = true;
            if (eligible && covers_critical) break;
        }
        if (eligible || covers_critical) pool.push_back(u);
    }
    return pool;
}

/// Pairwise inseparability relation: the zones of a and b share a wanting
/// device. Transmitting simultaneously would then either collide at that
/// device or (if it is one of the pair) target a device that hears nothing,
/// so such a pair only ever transmits together as a cluster.
inline bool zones_conflict(const NetworkState& state, DeviceId a, DeviceId b) {
    return intersects3(state.coverage_mask(a), state.coverage_mask(b), state.wanting_mask());
}

inline CoopVertex make_cluster_vertex(const NetworkState& state, const RoundContext& ctx,
                                      std::vector<DeviceId> members) {
    const int n = state.num_devices();
    Cluster c;
    c.members = std::move(members);
    c.member_mask = Bitset(n);
    c.coverage = Bitset(n);
    for (DeviceId m : c.members) {
        c.member_mask.set(m);
        c.coverage |= state.coverage_mask(m);
    }
    c.wanting_coverage = c.coverage;
    c.wanting_coverage &= state.wanting_mask();

    c.interfered = Bitset(n);
    if (c.members.size() > 1) {
        for (DeviceId u = 0; u < n; ++u) {
            if (c.member_mask.test(u) || !state.wanting_mask().test(u)) continue;
            int hears = 0;
            for (DeviceId m : c.members)
                if (state.connected(m, u) && ++hears >= 2) break;
            if (hears >= 2) c.interfered.set(u);
        }
    }

    CoopVertex v;
    Bitset excluded = c.member_mask;
    excluded |= c.interfered;
    for (DeviceId m : c.members) {
        LocalIdncGraph local = build_local_graph(state, ctx, m, &excluded);
        BestCombination best = best_combination(local);
        PlanEntry e;
        e.transmitter = m;
        if (best.combo.files.empty()) {
            // Coverage helper: transmits its lowest-id file, targets nobody.
            for (FileId f = 0; f < state.num_files(); ++f)
                if (state.has(m, f)) {
                    e.combo.files = {f};
                    break;
                }
        } else {
            e.combo = best.combo;
            e.targets = best.targets;
            v.has_targets = true;
        }
        v.weight.primary += best.critical_weight;
        v.weight.support += best.support_weight;

        // Coverage score: each covered critical device contributes one unit
        // plus, when it is left unserved, the log of the link erasure (a
        // higher erasure wastes the transmission less often).
        for (DeviceId u : ctx.critical) {
            if (!state.connected(m, u) || u == m) continue;
            bool served = contains(best.critical_targets, u);
            v.weight.coverage += kCoverageUnit + (served ? 0.0 : std::log(state.erasure(m, u)));
        }
        c.entries.push_back(std::move(e));
    }
    v.cluster = std::move(c);
    return v;
}

}  // namespace detail

/// Devices allowed to transmit alone under the critical-set constraints:
/// non-critical devices holding at least one file with at least one eligible
/// local-graph vertex.
inline std::vector<DeviceId> feasible_singletons(const NetworkState& state,
                                                 const RoundContext& ctx) {
    std::vector<DeviceId> out;
    for (DeviceId u = 0; u < state.num_devices(); ++u) {
        if (ctx.is_critical(u) || !state.has_mask(u).any()) continue;
        bool eligible = false;
        for (DeviceId v : state.coverage_list(u)) {
            if (v == u || !state.wants_mask(v).any()) continue;
            if (intersects(state.wants_mask(v), state.has_mask(u))) {
                eligible = true;
                break;
            }
        }
        if (eligible) out.push_back(u);
    }
    return out;
}

inline std::vector<DeviceId> feasible_singletons(const NetworkState& state,
                                                 const EpisodeMetrics& metrics) {
    return feasible_singletons(state, make_round_context(state, metrics));
}

/// All inseparable member sets up to `max_size` over the candidate pool:
/// connected subsets of the pairwise zone-conflict relation. Singletons are
/// always included. When `member_pool_limit > 0` and the pool is larger,
/// multi-member clusters draw members only from the strongest
/// `member_pool_limit` singleton candidates (the full singleton set is kept).
inline std::vector<CoopVertex> enumerate_clusters(const NetworkState& state,
                                                  const RoundContext& ctx,
                                                  const std::vector<DeviceId>& pool, int max_size,
                                                  int member_pool_limit = 0) {
    std::vector<CoopVertex> out;
    for (DeviceId u : pool) out.push_back(detail::make_cluster_vertex(state, ctx, {u}));
    if (max_size <= 1 || pool.size() < 2) return out;

    std::vector<DeviceId> members = pool;
    if (member_pool_limit > 0 && static_cast<int>(pool.size()) > member_pool_limit) {
        std::vector<int> order(pool.size());
        for (size_t i = 0; i < pool.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const TripleWeight& wa = out[a].weight;
            const TripleWeight& wb = out[b].weight;
            if (wa.primary != wb.primary) return wa.primary > wb.primary;
            if (wa.coverage != wb.coverage) return wa.coverage > wb.coverage;
            if (wa.support != wb.support) return wa.support > wb.support;
            return pool[a] < pool[b];
        });
        members.clear();
        for (int i = 0; i < member_pool_limit; ++i) members.push_back(pool[order[i]]);
        std::sort(members.begin(), members.end());
    }

    const int k = static_cast<int>(members.size());
    std::vector<Bitset> conflict(k, Bitset(k));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (detail::zones_conflict(state, members[i], members[j])) {
                conflict[i].set(j);
                conflict[j].set(i);
            }

    // Enumerate connected subsets of the conflict relation: each set is
    // rooted at its smallest member and grown through an append-only
    // candidate list of conflict-neighbors with larger indices, so every
    // connected subset is produced exactly once.
    std::vector<int> chosen;
    auto emit = [&]() {
        std::vector<DeviceId> ids;
        for (int i : chosen) ids.push_back(members[i]);
        std::sort(ids.begin(), ids.end());
        CoopVertex v = detail::make_cluster_vertex(state, ctx, ids);
        // A cluster may not interfere any critical device.
        for (DeviceId u : ctx.critical)
            if (v.cluster.interfered.test(u)) return;
        out.push_back(std::move(v));
    };
    auto enumerate = [&](auto&& self, int root, std::vector<int> cand, size_t next) -> void {
        if (chosen.size() > 1) emit();
        if (static_cast<int>(chosen.size()) >= max_size) return;
        for (size_t i = next; i < cand.size(); ++i) {
            int c = cand[i];
            chosen.push_back(c);
            std::vector<int> cand2 = cand;
            for (int d = root + 1; d < k; ++d) {
                if (!conflict[c].test(d)) continue;
                if (std::find(chosen.begin(), chosen.end(), d) != chosen.end()) continue;
                if (std::find(cand2.begin(), cand2.end(), d) == cand2.end()) cand2.push_back(d);
            }
            self(self, root, cand2, i + 1);
            chosen.pop_back();
        }
    };
    for (int root = 0; root < k; ++root) {
        chosen = {root};
        std::vector<int> cand;
        for (int d = root + 1; d < k; ++d)
            if (conflict[root].test(d)) cand.push_back(d);
        enumerate(enumerate, root, cand, 0);
    }
    return out;
}

/// Builds the (extended) cooperation graph over the given cluster vertices.
/// Two vertices are adjacent iff their combined coverages are disjoint on
/// wanting devices. With singleton clusters this is the plain cooperation
/// graph.
inline CooperationGraph build_cooperation_graph_from(std::vector<CoopVertex> vertices) {
    CooperationGraph g;
    g.vertices = std::move(vertices);
    const int n = static_cast<int>(g.vertices.size());
    g.adj.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Cluster& a = g.vertices[i].cluster;
            const Cluster& b = g.vertices[j].cluster;
            if (intersects(a.member_mask, b.member_mask)) continue;
            if (!intersects(a.wanting_coverage, b.wanting_coverage)) {
                g.adj[i].set(j);
                g.adj[j].set(i);
            }
        }
    }
    return g;
}

/// Cooperation graph over single devices (the collision-free construction).
inline CooperationGraph build_cooperation_graph(const NetworkState& state,
                                                const RoundContext& ctx,
                                                const std::vector<DeviceId>& pool) {
    std::vector<CoopVertex> vertices;
    for (DeviceId u : pool) vertices.push_back(detail::make_cluster_vertex(state, ctx, {u}));
    return build_cooperation_graph_from(std::move(vertices));
}

/// Extended cooperation graph over device clusters (the general construction).
inline CooperationGraph build_extended_graph(const NetworkState& state, const RoundContext& ctx,
                                             const std::vector<DeviceId>& pool, int max_size,
                                             int member_pool_limit = 0) {
    return build_cooperation_graph_from(
        enumerate_clusters(state, ctx, pool, max_size, member_pool_limit));
}

}  // namespace idnc

#endif  // IDNC_COOP_GRAPH_HPP_
