#ifndef IDNC_LOCAL_GRAPH_HPP_
#define IDNC_LOCAL_GRAPH_HPP_

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idnc/clique.hpp"
#include "idnc/metrics.hpp"
#include "idnc/network.hpp"

namespace idnc {

/// Vertex of the multi-layer local IDNC graph: a (neighbor, wanted file)
/// pair. The layer is the neighbor's criticality layer, the weight the
/// negated log of the transmitter-to-neighbor erasure.
struct LocalVertex {
    DeviceId device;
    FileId file;
    int layer;
    double weight;
};

/// Local IDNC graph of one candidate transmitter (or of the virtual base
/// station when `transmitter` is empty). Two vertices are adjacent iff the
/// XOR of their files is instantly decodable for both devices.
struct LocalIdncGraph {
    std::optional<DeviceId> transmitter;
    std::vector<LocalVertex> vertices;  // ordered by (device, file)
    std::vector<Bitset> adj;
    int max_layer = 0;
};

namespace detail {

inline void finish_local_graph(LocalIdncGraph& g, const NetworkState& state) {
    const int n = static_cast<int>(g.vertices.size());
    g.adj.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& a = g.vertices[i];
            const auto& b = g.vertices[j];
            if (a.device == b.device) continue;
            bool joint = a.file == b.file ||
                         (state.has(b.device, a.file) && state.has(a.device, b.file));
            if (joint) {
                g.adj[i].set(j);
                g.adj[j].set(i);
            }
        }
        g.max_layer = std::max(g.max_layer, g.vertices[i].layer);
    }
}

}  // namespace detail

/// Builds the local graph of `transmitter` over its coverage zone, skipping
///`excluded` devices (a cluster's members and its interfered devices).
inline LocalIdncGraph build_local_graph(const NetworkState& state, const RoundContext& ctx,
                                        DeviceId transmitter, const Bitset* excluded = nullptr) {
    LocalIdncGraph g;
    g.transmitter = transmitter;
    for (DeviceId u : state.coverage_list(transmitter)) {
        if (u == transmitter) continue;
        if (excluded && excluded->test(u)) continue;
        if (!state.wants_mask(u).any()) continue;
        int layer = ctx.layer(u);
        double w = -std::log(state.erasure(transmitter, u));
        for (FileId f = 0; f < state.num_files(); ++f)
            if (state.wants(u, f) && state.has(transmitter, f))
                g.vertices.push_back({u, f, layer, w});
    }
    detail::finish_local_graph(g, state);
    return g;
}

/// Local graph of the virtual base station: holds every file, covers every
/// device, uniform erasure `bs_erasure`.
inline LocalIdncGraph build_pmp_graph(const NetworkState& state, const RoundContext& ctx,
                                      double bs_erasure) {
    LocalIdncGraph g;
    double w = -std::log(bs_erasure);
    for (DeviceId u = 0; u < state.num_devices(); ++u) {
        if (!state.wants_mask(u).any()) continue;
        int layer = ctx.layer(u);
        for (FileId f = 0; f < state.num_files(); ++f)
            if (state.wants(u, f)) g.vertices.push_back({u, f, layer, w});
    }
    detail::finish_local_graph(g, state);
    return g;
}

/// Combination and target set induced by a clique of the local graph.
inline std::pair<FileCombination, std::vector<DeviceId>> combination_of(
    const LocalIdncGraph& g, const std::vector<int>& clique) {
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            if (!g.adj[clique[i]].test(clique[j]))
                throw std::logic_error("combination_of: vertex set is not a clique");
    FileCombination combo;
    std::vector<DeviceId> targets;
    for (int v : clique) {
        insert_sorted(combo.files, g.vertices[v].file);
        insert_sorted(targets, g.vertices[v].device);
    }
    return {combo, targets};
}

/// Result of the multi-layer combination search. `critical_weight` is the
/// layer-1 objective value; `support_weight` sums the link weights of the
/// non-critical targets picked up by the layer extension.
struct BestCombination {
    FileCombination combo;
    std::vector<DeviceId> targets;       // sorted
    std::vector<DeviceId> critical_targets;  // sorted, == layer-1 targets
    double critical_weight = 0.0;
    double support_weight = 0.0;
};

/// Maximum-weight clique over the layer-1 vertices, then a greedy exact
/// extension layer by layer among vertices compatible with everything chosen
/// so far. The extension can only add targets, never remove layer-1 ones.
inline BestCombination best_combination(const LocalIdncGraph& g) {
    BestCombination out;
    std::vector<int> chosen;

    for (int layer = 1; layer <= g.max_layer; ++layer) {
        std::vector<int> cand;
        for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
            if (g.vertices[v].layer != layer) continue;
            bool compatible = true;
            for (int c : chosen) compatible = compatible && g.adj[c].test(v);
            if (compatible) cand.push_back(v);
        }
        if (cand.empty()) continue;

        WeightedGraph sub(static_cast<int>(cand.size()));
        for (size_t i = 0; i < cand.size(); ++i) {
            sub.weights[i] = g.vertices[cand[i]].weight;
            for (size_t j = i + 1; j < cand.size(); ++j)
                if (g.adj[cand[i]].test(cand[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
        double w = 0.0;
        std::vector<int> picked = max_weight_clique(sub, {}, &w);
        for (int p : picked) chosen.push_back(cand[p]);
        if (layer == 1)
            out.critical_weight = w;
        else
            out.support_weight += w;
    }

    for (int v : chosen) {
        insert_sorted(out.combo.files, g.vertices[v].file);
        insert_sorted(out.targets, g.vertices[v].device);
        if (g.vertices[v].layer == 1) insert_sorted(out.critical_targets, g.vertices[v].device);
    }
    return out;
}

/// Adjacency-list dump for golden tests: one "u:f:layer:weight -> i,j,..."
/// line per vertex, neighbor indices ascending.
inline std::string dump_graph(const LocalIdncGraph& g) {
    std::string out;
    char buf[128];
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        std::snprintf(buf, sizeof(buf), "%d:%d:%d:%.6g ->", v.device, v.file, v.layer, v.weight);
        out += buf;
        bool first = true;
        for (size_t j = 0; j < g.vertices.size(); ++j)
            if (j != i && g.adj[i].test(static_cast<int>(j))) {
                std::snprintf(buf, sizeof(buf), "%s %zu", first ? "" : ",", j);
                out += buf;
                first = false;
            }
        out += '\n';
    }
    return out;
}

}  // namespace idnc

#endif  // IDNC_LOCAL_GRAPH_HPP_
