#ifndef IDNC_SCHEDULER_HPP_
#define IDNC_SCHEDULER_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "idnc/coop_graph.hpp"

namespace idnc {

enum class SchedulerKind { collision_free, general, pmp, single_transmitter };

inline const char* to_string(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::collision_free: return "collision_free";
        case SchedulerKind::general: return "general";
        case SchedulerKind::pmp: return "pmp";
        case SchedulerKind::single_transmitter: return "single_transmitter";
    }
    return "?";
}

struct SchedulerOptions {
    int max_cluster_size = 3;
    /// Above this pool size, multi-member cluster enumeration restricts its
    /// member candidates to the strongest singletons (singletons themselves
    /// are never dropped). 0 disables the restriction.
    int member_pool_limit = 20;
    double pmp_erasure = 0.2;
};

/// Critical-set gain of a plan: sum over transmissions of log(1/erasure) for
/// every targeted critical device. This is the quantity maximized first by
/// every scheduler and compared across them in the dominance checks.
inline double plan_critical_weight(const NetworkState& state, const RoundContext& ctx,
                                   const TransmissionPlan& plan) {
    double w = 0.0;
    for (const auto& e : plan.entries)
        for (DeviceId t : e.targets)
            if (ctx.is_critical(t))
                w += -std::log(e.transmitter ? state.erasure(*e.transmitter, t) : e.bs_erasure);
    return w;
}

namespace detail {

/// Turns a clique of cluster vertices into a plan: concatenates the member
/// entries and drops targets that are themselves plan transmitters (a
/// transmitting device hears nothing).
inline TransmissionPlan assemble_plan(const CooperationGraph& g, const std::vector<int>& clique) {
    TransmissionPlan plan;
    std::vector<DeviceId> transmitters;
    for (int v : clique)
        for (DeviceId m : g.vertices[v].cluster.members) insert_sorted(transmitters, m);
    for (int v : clique)
        for (const PlanEntry& e : g.vertices[v].cluster.entries) plan.entries.push_back(e);
    for (auto& e : plan.entries) {
        std::vector<DeviceId> kept;
        for (DeviceId t : e.targets)
            if (!contains(transmitters, t)) kept.push_back(t);
        e.targets = std::move(kept);
    }
    std::sort(plan.entries.begin(), plan.entries.end(),
              [](const PlanEntry& a, const PlanEntry& b) { return a.transmitter < b.transmitter; });
    return plan;
}

struct Selection {
    std::vector<int> clique;
    TripleWeight weight;
    bool found = false;
};

/// Lexicographic-maximum clique of the cooperation graph, with a re-selection
/// pass forcing a serving vertex whenever the unconstrained optimum targets
/// nobody (progress requires every returned plan to serve someone).
inline Selection select_clique(const CooperationGraph& g) {
    Selection sel;
    if (g.vertices.empty()) return sel;
    WeightedGraphT<TripleWeight> wg = g.as_weighted();
    TripleWeight w{};
    std::vector<int> clique = max_weight_clique(wg, {}, &w);
    sel.found = true;
    sel.clique = clique;
    sel.weight = w;

    auto targets_someone = [&](const std::vector<int>& c) {
        for (int v : c)
            if (g.vertices[v].has_targets) return true;
        return false;
    };
    if (targets_someone(sel.clique)) return sel;

    bool any_server = false;
    for (const auto& v : g.vertices) any_server = any_server || v.has_targets;
    if (!any_server) return sel;  // nothing can serve; caller falls back

    // Force each serving vertex in turn and keep the lexicographic best.
    Selection best;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        if (!g.vertices[v].has_targets) continue;
        CliqueSearchOptions opt;
        opt.forced = {v};
        TripleWeight fw{};
        std::vector<int> c = max_weight_clique(wg, opt, &fw);
        if (!best.found || best.weight < fw || (!(fw < best.weight) && c < best.clique)) {
            best.found = true;
            best.clique = c;
            best.weight = fw;
        }
    }
    return best;
}

inline TransmissionPlan plan_from_graph(const CooperationGraph& g) {
    Selection sel = select_clique(g);
    if (!sel.found) return {};
    return assemble_plan(g, sel.clique);
}

/// Shared scheduling pipeline. Builds the candidate pool under the
/// critical-set feasibility rules; if no candidate can serve anybody, drops
/// those rules (critical devices may then transmit) so that progress is
/// guaranteed whenever any device can serve any other.
inline TransmissionPlan select_plan(const NetworkState& state, const RoundContext& ctx,
                                    SchedulerKind kind, const SchedulerOptions& opt) {
    for (bool allow_critical : {false, true}) {
        std::vector<DeviceId> pool = transmitter_pool(state, ctx, allow_critical);
        if (pool.empty()) continue;

        CooperationGraph g;
        if (kind == SchedulerKind::general) {
            g = build_extended_graph(state, ctx, pool, opt.max_cluster_size,
                                     opt.member_pool_limit);
        } else {
            g = build_cooperation_graph(state, ctx, pool);
        }
        if (kind == SchedulerKind::single_transmitter) {
            // Same machinery restricted to cliques of size one.
            for (auto& row : g.adj) row = Bitset(static_cast<int>(g.vertices.size()));
        }

        bool any_server = false;
        for (const auto& v : g.vertices) any_server = any_server || v.has_targets;
        if (!any_server) continue;  // fall through to the relaxed pool

        TransmissionPlan plan = plan_from_graph(g);
        if (plan.target_count() > 0) return plan;
    }
    return {};
}

}  // namespace detail

/// Collision-free scheduler: maximum-weight clique of the cooperation graph
/// over single transmitters with pairwise wanting-coverage disjointness.
inline TransmissionPlan plan_collision_free(const NetworkState& state, const RoundContext& ctx,
                                            const SchedulerOptions& opt = {}) {
    return detail::select_plan(state, ctx, SchedulerKind::collision_free, opt);
}

/// General scheduler: maximum-weight clique of the extended cooperation graph
/// whose vertices are inseparable transmitter clusters.
inline TransmissionPlan plan_general(const NetworkState& state, const RoundContext& ctx,
                                     const SchedulerOptions& opt = {}) {
    return detail::select_plan(state, ctx, SchedulerKind::general, opt);
}

/// Single-transmitter baseline on the true partial topology.
inline TransmissionPlan plan_single_transmitter(const NetworkState& state,
                                                const RoundContext& ctx,
                                                const SchedulerOptions& opt = {}) {
    return detail::select_plan(state, ctx, SchedulerKind::single_transmitter, opt);
}

/// Point-to-multipoint baseline: one virtual base station holding every file,
/// covering every device, with uniform erasure `opt.pmp_erasure`.
inline TransmissionPlan plan_pmp(const NetworkState& state, const RoundContext& ctx,
                                 const SchedulerOptions& opt = {}) {
    if (opt.pmp_erasure <= 0.0 || opt.pmp_erasure >= 1.0)
        throw std::invalid_argument("base-station erasure must lie in (0,1)");
    LocalIdncGraph g = build_pmp_graph(state, ctx, opt.pmp_erasure);
    BestCombination best = best_combination(g);
    TransmissionPlan plan;
    if (best.combo.files.empty()) return plan;
    PlanEntry e;
    e.transmitter = std::nullopt;
    e.combo = best.combo;
    e.targets = best.targets;
    e.bs_erasure = opt.pmp_erasure;
    plan.entries.push_back(std::move(e));
    return plan;
}

inline TransmissionPlan make_plan(const NetworkState& state, const RoundContext& ctx,
                                  SchedulerKind kind, const SchedulerOptions& opt = {}) {
    switch (kind) {
        case SchedulerKind::collision_free: return plan_collision_free(state, ctx, opt);
        case SchedulerKind::general: return plan_general(state, ctx, opt);
        case SchedulerKind::pmp: return plan_pmp(state, ctx, opt);
        case SchedulerKind::single_transmitter: return plan_single_transmitter(state, ctx, opt);
    }
    return {};
}

/// Convenience overloads building the round context internally.
inline TransmissionPlan make_plan(const NetworkState& state, const EpisodeMetrics& metrics,
                                  SchedulerKind kind, const SchedulerOptions& opt = {}) {
    return make_plan(state, make_round_context(state, metrics), kind, opt);
}

}  // namespace idnc

#endif  // IDNC_SCHEDULER_HPP_
