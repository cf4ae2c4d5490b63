#ifndef IDNC_VERIFY_HPP_
#define IDNC_VERIFY_HPP_

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "idnc/sim.hpp"

namespace idnc {

// ---------------------------------------------------------------------------
// Random test instances (mid-episode snapshots with synthetic histories)

struct TestInstance {
    NetworkState state;
    EpisodeMetrics metrics;
};

/// Random connected instance with a synthetic delay history, used by the
/// oracle suites. Wants sets are never all empty.
inline TestInstance random_tiny_instance(Rng& rng, int max_devices = 5, int max_files = 3,
                                         double min_erasure = 0.05, double max_erasure = 0.45) {
    for (;;) {
        int u = 2 + static_cast<int>(rng.below(max_devices - 1));
        int f = 1 + static_cast<int>(rng.below(max_files));
        double cmin = static_cast<double>(3 * u - 2) / (u * u);
        double c = rng.uniform(cmin, 1.0);
        auto conn = generate_topology(u, std::max(c, cmin + 1e-9), rng);

        std::vector<std::vector<double>> eras(u, std::vector<double>(u, 0.0));
        for (int a = 0; a < u; ++a)
            for (int b = 0; b < u; ++b)
                if (a != b) eras[a][b] = rng.uniform(min_erasure, max_erasure);

        double p_has = rng.uniform(0.3, 0.9);
        std::vector<std::vector<FileId>> has(u);
        std::vector<bool> held(f, false);
        for (int v = 0; v < u; ++v)
            for (FileId g = 0; g < f; ++g)
                if (rng.bernoulli(p_has)) {
                    has[v].push_back(g);
                    held[g] = true;
                }
        for (FileId g = 0; g < f; ++g)
            if (!held[g]) insert_sorted(has[static_cast<int>(rng.below(u))], g);

        NetworkState state = NetworkState::create(u, f, conn, eras, has);
        if (state.all_complete()) continue;

        EpisodeMetrics metrics = EpisodeMetrics::start(state);
        for (int v = 0; v < u; ++v) {
            metrics.device[v].initial_demand =
                state.wants_count(v) + static_cast<int>(rng.below(3));
            metrics.device[v].decoding_delay = static_cast<int>(rng.below(5));
            metrics.device[v].erasure_count = static_cast<int>(rng.below(3));
            if (!state.wants_mask(v).any()) metrics.device[v].completion_round = 0;
        }
        return {std::move(state), std::move(metrics)};
    }
}

// ---------------------------------------------------------------------------
// Decoding-delay distribution oracle

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log of the probability that no critical device sees its delay grow under
/// the given plan, evaluated from the per-device delay distribution:
/// transmitting / colliding / uncovered critical devices make it zero, a
/// targeted one contributes certainty, an overhearing one its link erasure.
inline double critical_log_product(const NetworkState& state, const RoundContext& ctx,
                                   const std::vector<std::pair<DeviceId, FileCombination>>& plan) {
    double sum = 0.0;
    for (DeviceId u : ctx.critical) {
        bool transmits = false;
        int hears = 0;
        int heard = -1;
        for (size_t i = 0; i < plan.size(); ++i) {
            if (plan[i].first == u) transmits = true;
            if (state.connected(plan[i].first, u) && plan[i].first != u) {
                ++hears;
                heard = static_cast<int>(i);
            }
        }
        if (transmits || hears != 1) return kLogZero;
        if (!is_instantly_decodable(plan[heard].second, u, state))
            sum += std::log(state.erasure(plan[heard].first, u));
    }
    return sum;
}

inline std::vector<std::pair<DeviceId, FileCombination>> oracle_view(const TransmissionPlan& p) {
    std::vector<std::pair<DeviceId, FileCombination>> v;
    for (const auto& e : p.entries)
        if (e.transmitter) v.emplace_back(*e.transmitter, e.combo);
    return v;
}

/// Exhaustive maximum of the critical log-product over every transmitter set
/// and combination assignment (optionally restricted to collision-free
/// plans). Tractable only for tiny instances.
inline double exhaustive_best_log_product(const NetworkState& state, const RoundContext& ctx,
                                          bool collision_free_only) {
    const int n = state.num_devices();
    std::vector<DeviceId> holders;
    for (DeviceId u = 0; u < n; ++u)
        if (state.has_mask(u).any()) holders.push_back(u);

    double best = kLogZero;
    const int hn = static_cast<int>(holders.size());
    for (uint32_t mask = 1; mask < (1u << hn); ++mask) {
        std::vector<DeviceId> tx;
        for (int i = 0; i < hn; ++i)
            if (mask & (1u << i)) tx.push_back(holders[i]);

        // Critical transmitters and badly-heard critical devices zero the
        // product outright.
        bool feasible = true;
        for (DeviceId u : ctx.critical) {
            bool transmits = false;
            int hears = 0;
            for (DeviceId a : tx) {
                if (a == u) transmits = true;
                if (a != u && state.connected(a, u)) ++hears;
            }
            if (transmits || hears != 1) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        if (collision_free_only) {
            // Pairwise zone disjointness on wanting devices, the literal
            // collision-free cooperation constraint.
            bool ok = true;
            for (size_t a = 0; a < tx.size() && ok; ++a)
                for (size_t b = a + 1; b < tx.size() && ok; ++b)
                    ok = !intersects3(state.coverage_mask(tx[a]), state.coverage_mask(tx[b]),
                                      state.wanting_mask());
            if (!ok) continue;
        }

        // Combination choices decouple per transmitter: each maximizes over
        // the power set of its Has set independently.
        double total = 0.0;
        for (DeviceId a : tx) {
            std::vector<DeviceId> listeners;  // critical devices hearing only a
            for (DeviceId u : ctx.critical) {
                if (!state.connected(a, u) || u == a) continue;
                int hears = 0;
                for (DeviceId b : tx)
                    if (b != u && state.connected(b, u)) ++hears;
                if (hears == 1) listeners.push_back(u);
            }
            std::vector<FileId> held = state.has_mask(a).to_vector();
            double best_a = kLogZero;
            for (uint32_t fm = 1; fm < (1u << held.size()); ++fm) {
                FileCombination combo;
                for (size_t i = 0; i < held.size(); ++i)
                    if (fm & (1u << i)) combo.files.push_back(held[i]);
                double v = 0.0;
                for (DeviceId u : listeners)
                    if (!is_instantly_decodable(combo, u, state))
                        v += std::log(state.erasure(a, u));
                best_a = std::max(best_a, v);
            }
            total += best_a;  // holders always have a nonempty combination
        }
        best = std::max(best, total);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Small statistics helpers

/// One-sided binomial tail P[X >= wins | n trials, p = 1/2].
inline double sign_test_p(int wins, int trials) {
    if (trials == 0) return 1.0;
    double log_half = std::log(0.5);
    double p = 0.0;
    double log_choose = 0.0;  // log C(n, 0)
    std::vector<double> terms;
    for (int k = 0; k <= trials; ++k) {
        if (k >= wins) terms.push_back(log_choose + trials * log_half);
        log_choose += std::log(static_cast<double>(trials - k)) - std::log(static_cast<double>(k + 1));
    }
    double m = kLogZero;
    for (double t : terms) m = std::max(m, t);
    if (m == kLogZero) return 0.0;
    for (double t : terms) p += std::exp(t - m);
    return std::exp(m) * p;
}

// ---------------------------------------------------------------------------
// Acceptance criteria

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

struct EpisodeBatch {
    std::vector<int> completions;
    long long audited_rounds = 0;
    long long order_violations = 0;
    double worst_gap = 0.0;
};

/// Runs `iterations` episodes of one scheduler at one config point, optionally
/// auditing the per-round scheduler weight ordering (criterion 8).
inline EpisodeBatch run_batch(const ExperimentConfig& cfg, SchedulerKind kind, bool audit,
                              int threads) {
    EpisodeBatch batch;
    batch.completions.assign(cfg.iterations, 0);
    std::vector<long long> rounds(cfg.iterations, 0), violations(cfg.iterations, 0);
    std::vector<double> gaps(cfg.iterations, 0.0);
    parallel_for(cfg.iterations, threads, [&](int it) {
        uint64_t instance_seed = derive_seed(cfg.seed, 0, static_cast<uint64_t>(it));
        Rng instance_rng(instance_seed);
        NetworkState state = make_instance(cfg, instance_rng);
        Rng episode_rng(derive_seed(instance_seed, 1000 + static_cast<uint64_t>(kind), 0));
        EpisodeOptions eo;
        eo.audit_weights = audit;
        EpisodeResult r =
            run_episode(std::move(state), kind, cfg.scheduler_options(), episode_rng, eo);
        batch.completions[it] = r.completion_time;
        if (audit) {
            rounds[it] = static_cast<long long>(r.rounds.size());
            for (const auto& log : r.rounds) {
                double g1 = log.weight_collision_free - log.weight_general;
                double g2 = log.weight_single - log.weight_collision_free;
                if (g1 > 1e-9 || g2 > 1e-9) {
                    ++violations[it];
                    gaps[it] = std::max(gaps[it], std::max(g1, g2));
                }
            }
        }
    });
    for (int i = 0; i < cfg.iterations; ++i) {
        batch.audited_rounds += rounds[i];
        batch.order_violations += violations[i];
        batch.worst_gap = std::max(batch.worst_gap, gaps[i]);
    }
    return batch;
}

inline double mean_of(const std::vector<int>& xs) {
    double s = 0.0;
    for (int x : xs) s += x;
    return s / xs.size();
}

}  // namespace detail

/// Criterion 1: completion identity over 10,000 mixed-config episodes.
inline CriterionResult criterion_1(int threads, int episodes = 10000) {
    CriterionResult res{1, "lemma-1 completion identity", false, "", 0};
    std::vector<int> failures(episodes, 0);
    parallel_for(episodes, threads, [&](int i) {
        uint64_t seed = derive_seed(0xC1, 0, static_cast<uint64_t>(i));
        Rng rng(seed);
        int u = 4 + static_cast<int>(rng.below(11));
        int f = 2 + static_cast<int>(rng.below(9));
        double cmin = static_cast<double>(3 * u - 2) / (u * u);
        ExperimentConfig cfg;
        cfg.num_devices = u;
        cfg.num_files = f;
        cfg.connectivity = rng.uniform(std::min(cmin + 0.05, 0.95), 1.0);
        cfg.mean_erasure = rng.uniform(0.05, 0.3);
        cfg.erasure_jitter = 0.05;
        cfg.seed = seed;
        SchedulerKind kinds[] = {SchedulerKind::collision_free, SchedulerKind::general,
                                 SchedulerKind::pmp, SchedulerKind::single_transmitter};
        SchedulerKind kind = kinds[i % 4];
        try {
            NetworkState state = make_instance(cfg, rng);
            Rng episode_rng(derive_seed(seed, 7, 0));
            EpisodeResult r =
                run_episode(std::move(state), kind, cfg.scheduler_options(), episode_rng);
            for (const auto& d : r.metrics.device)
                if (!d.completion_round ||
                    *d.completion_round != d.initial_demand + d.decoding_delay + d.erasure_count)
                    failures[i] = 1;
        } catch (const std::exception&) {
            failures[i] = 1;
        }
    });
    long long bad = 0;
    for (int f : failures) bad += f;
    res.pass = bad == 0;
    res.detail = detail::format("%d episodes, %lld identity violations", episodes, bad);
    return res;
}

/// Criterion 2: solver vs. brute force on 1,000 random graphs, n <= 12.
inline CriterionResult criterion_2(int threads, int graphs = 1000) {
    CriterionResult res{2, "max-weight clique vs brute force", false, "", 0};
    std::vector<int> failures(graphs, 0);
    parallel_for(graphs, threads, [&](int i) {
        Rng rng(derive_seed(0xC2, 0, static_cast<uint64_t>(i)));
        int n = 1 + static_cast<int>(rng.below(12));
        WeightedGraph g(n);
        double edge_p = rng.uniform(0.1, 0.9);
        bool integer_weights = rng.below(4) == 0;
        for (int v = 0; v < n; ++v)
            g.weights[v] = integer_weights ? static_cast<double>(rng.below(4)) : rng.uniform(0.0, 10.0);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.bernoulli(edge_p)) g.add_edge(a, b);
        if (max_weight_clique(g) != brute_force_clique(g)) failures[i] = 1;
    });
    long long bad = 0;
    for (int f : failures) bad += f;
    res.pass = bad == 0;
    res.detail = detail::format("%d graphs, %lld mismatches", graphs, bad);
    return res;
}

/// Criterion 3: the schedulers attain the exhaustive optimum of the critical
/// delay-free probability product on tiny instances.
inline CriterionResult criterion_3(int threads, int instances = 200) {
    CriterionResult res{3, "scheduler objective oracle", false, "", 0};
    std::vector<int> failures(instances, 0);
    parallel_for(instances, threads, [&](int i) {
        Rng rng(derive_seed(0xC3, 0, static_cast<uint64_t>(i)));
        TestInstance inst = random_tiny_instance(rng, 5, 3);
        RoundContext ctx = make_round_context(inst.state, inst.metrics);

        SchedulerOptions opt;
        opt.max_cluster_size = inst.state.num_devices();
        opt.member_pool_limit = 0;

        double best_any = exhaustive_best_log_product(inst.state, ctx, false);
        double best_cf = exhaustive_best_log_product(inst.state, ctx, true);

        TransmissionPlan general = plan_general(inst.state, ctx, opt);
        TransmissionPlan cf = plan_collision_free(inst.state, ctx, opt);
        double got_any = critical_log_product(inst.state, ctx, oracle_view(general));
        double got_cf = critical_log_product(inst.state, ctx, oracle_view(cf));

        auto matches = [](double got, double best) {
            if (best == kLogZero) return true;  // every plan attains a zero product
            return got != kLogZero && std::abs(got - best) <= 1e-9;
        };
        if (!matches(got_any, best_any) || !matches(got_cf, best_cf)) failures[i] = 1;
    });
    long long bad = 0;
    for (int f : failures) bad += f;
    res.pass = bad == 0;
    res.detail = detail::format("%d instances, %lld suboptimal plans", instances, bad);
    return res;
}

namespace detail {

/// Conflict-component decomposition of a transmitter set: members are joined
/// when their zones share a wanting device outside the pair.
inline std::vector<std::vector<DeviceId>> decompose_clusters(const NetworkState& state,
                                                             std::vector<DeviceId> tx) {
    std::sort(tx.begin(), tx.end());
    const int k = static_cast<int>(tx.size());
    std::vector<int> comp(k, -1);
    int n_comp = 0;
    for (int i = 0; i < k; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = n_comp;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < k; ++b)
                if (comp[b] < 0 && zones_conflict(state, tx[a], tx[b])) {
                    comp[b] = n_comp;
                    stack.push_back(b);
                }
        }
        ++n_comp;
    }
    std::vector<std::vector<DeviceId>> parts(n_comp);
    for (int i = 0; i < k; ++i) parts[comp[i]].push_back(tx[i]);
    return parts;
}

inline bool feasible_with_coverage(const NetworkState& state, const RoundContext& ctx,
                                   const std::vector<DeviceId>& tx) {
    for (DeviceId u : ctx.critical) {
        bool transmits = false;
        int hears = 0;
        for (DeviceId a : tx) {
            if (a == u) transmits = true;
            if (a != u && state.connected(a, u)) ++hears;
        }
        if (transmits || hears != 1) return false;
    }
    return true;
}

inline void enumerate_graph_cliques(const CooperationGraph& g,
                                    const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> clique;
    auto expand = [&](auto&& self, int from) -> void {
        if (!clique.empty()) visit(clique);
        for (int v = from; v < static_cast<int>(g.vertices.size()); ++v) {
            bool ok = true;
            for (int c : clique) ok = ok && g.adj[c].test(v);
            if (!ok) continue;
            clique.push_back(v);
            self(self, v + 1);
            clique.pop_back();
        }
    };
    expand(expand, 0);
}

}  // namespace detail

/// Criterion 4: clique <-> feasible-transmitter-set bijection of the extended
/// cooperation graph, both directions, on tiny instances.
inline CriterionResult criterion_4(int threads, int instances = 100) {
    CriterionResult res{4, "extended-graph bijection", false, "", 0};
    std::vector<int> failures(instances, 0);
    parallel_for(instances, threads, [&](int i) {
        Rng rng(derive_seed(0xC4, 0, static_cast<uint64_t>(i)));
        TestInstance inst = random_tiny_instance(rng, 6, 3);
        const NetworkState& state = inst.state;
        RoundContext ctx = make_round_context(state, inst.metrics);

        // Candidate transmitters: every non-critical device holding a file.
        std::vector<DeviceId> pool;
        for (DeviceId u = 0; u < state.num_devices(); ++u)
            if (!ctx.is_critical(u) && state.has_mask(u).any()) pool.push_back(u);
        CooperationGraph g =
            build_extended_graph(state, ctx, pool, state.num_devices(), 0);

        // Forward: each coverage-feasible clique maps to a feasible set whose
        // canonical decomposition is exactly the clique's clusters.
        long long covered_cliques = 0;
        bool ok = true;
        detail::enumerate_graph_cliques(g, [&](const std::vector<int>& clique) {
            std::vector<DeviceId> tx;
            for (int v : clique)
                for (DeviceId m : g.vertices[v].cluster.members) insert_sorted(tx, m);
            if (!detail::feasible_with_coverage(state, ctx, tx)) return;
            ++covered_cliques;
            auto parts = detail::decompose_clusters(state, tx);
            if (parts.size() != clique.size()) {
                ok = false;
                return;
            }
            for (int v : clique) {
                bool found = false;
                for (const auto& p : parts) found = found || p == g.vertices[v].cluster.members;
                ok = ok && found;
            }
        });

        // Backward: every feasible transmitter set decomposes into clusters
        // present in the graph, pairwise adjacent.
        long long feasible_sets = 0;
        const int pn = static_cast<int>(pool.size());
        for (uint32_t mask = 1; mask < (1u << pn); ++mask) {
            std::vector<DeviceId> tx;
            for (int b = 0; b < pn; ++b)
                if (mask & (1u << b)) tx.push_back(pool[b]);
            if (!detail::feasible_with_coverage(state, ctx, tx)) continue;
            ++feasible_sets;
            auto parts = detail::decompose_clusters(state, tx);
            std::vector<int> ids;
            for (const auto& p : parts) {
                int found = -1;
                for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
                    if (g.vertices[v].cluster.members == p) found = v;
                if (found < 0) {
                    ok = false;
                    break;
                }
                ids.push_back(found);
            }
            for (size_t a = 0; a < ids.size() && ok; ++a)
                for (size_t b = a + 1; b < ids.size(); ++b)
                    ok = ok && g.adj[ids[a]].test(ids[b]);
            if (!ok) break;
        }
        if (covered_cliques != feasible_sets) ok = false;
        if (!ok) failures[i] = 1;
    });
    long long bad = 0;
    for (int f : failures) bad += f;
    res.pass = bad == 0;
    res.detail = detail::format("%d instances, %lld bijection failures", instances, bad);
    return res;
}

/// Criterion 5: anticipated completion calibration under the
/// single-transmitter scheduler.
inline CriterionResult criterion_5(int threads, int episodes = 200) {
    CriterionResult res{5, "anticipated completion calibration", false, "", 0};
    ExperimentConfig cfg;
    cfg.num_devices = 30;
    cfg.num_files = 100;
    cfg.connectivity = 0.4;
    cfg.mean_erasure = 0.1;
    cfg.iterations = episodes;
    cfg.seed = 0xC5;

    std::vector<double> err_sum(episodes, 0.0);
    std::vector<long long> err_n(episodes, 0);
    parallel_for(episodes, threads, [&](int it) {
        uint64_t instance_seed = derive_seed(cfg.seed, 0, static_cast<uint64_t>(it));
        Rng instance_rng(instance_seed);
        NetworkState initial = make_instance(cfg, instance_rng);
        NetworkState state = initial;
        Rng episode_rng(derive_seed(instance_seed, 5, 0));
        EpisodeResult r = run_episode(std::move(state), SchedulerKind::single_transmitter,
                                      cfg.scheduler_options(), episode_rng);
        for (DeviceId u = 0; u < initial.num_devices(); ++u) {
            const DeviceMetrics& d = r.metrics.device[u];
            if (d.initial_demand == 0) continue;
            double eps = expected_erasure(initial, u);
            double anticipated = (d.initial_demand + d.decoding_delay - eps) / (1.0 - eps);
            double realized = static_cast<double>(*d.completion_round);
            err_sum[it] += std::abs(realized - anticipated) / realized;
            err_n[it] += 1;
        }
    });
    double total = 0.0;
    long long n = 0;
    for (int i = 0; i < episodes; ++i) {
        total += err_sum[i];
        n += err_n[i];
    }
    double mean_rel_err = total / n;
    res.pass = mean_rel_err < 0.10;
    res.detail = detail::format("mean relative error %.4f over %lld devices (< 0.10 required)",
                                mean_rel_err, n);
    return res;
}

struct TrendReport {
    std::string detail;
    bool pass = true;
    long long audited_rounds = 0;
    long long order_violations = 0;
    double worst_gap = 0.0;

    void note(bool ok, const std::string& msg) {
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "FAIL ") + msg;
    }
};

/// Criterion 6 (+8 audit): completion-time trends against the connectivity
/// index at U=60, F=30, E=0.1.
inline CriterionResult criterion_6(int threads, int iterations = 200,
                                   TrendReport* report_out = nullptr) {
    CriterionResult res{6, "connectivity-sweep trends", false, "", 0};
    std::vector<double> cs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    ExperimentConfig base;
    base.num_devices = 60;
    base.num_files = 30;
    base.mean_erasure = 0.1;
    base.iterations = iterations;
    base.seed = 0xC6;

    TrendReport report;
    std::vector<double> mean_gen(cs.size()), mean_cf(cs.size()), mean_st(cs.size());
    for (size_t ci = 0; ci < cs.size(); ++ci) {
        ExperimentConfig cfg = base;
        cfg.connectivity = cs[ci];
        detail::EpisodeBatch gen = detail::run_batch(cfg, SchedulerKind::general, true, threads);
        detail::EpisodeBatch cf =
            detail::run_batch(cfg, SchedulerKind::collision_free, true, threads);
        detail::EpisodeBatch st =
            detail::run_batch(cfg, SchedulerKind::single_transmitter, true, threads);
        mean_gen[ci] = detail::mean_of(gen.completions);
        mean_cf[ci] = detail::mean_of(cf.completions);
        mean_st[ci] = detail::mean_of(st.completions);
        for (const auto* b : {&gen, &cf, &st}) {
            report.audited_rounds += b->audited_rounds;
            report.order_violations += b->order_violations;
            report.worst_gap = std::max(report.worst_gap, b->worst_gap);
        }
        int wins = 0, losses = 0;
        for (int i = 0; i < iterations; ++i) {
            if (cf.completions[i] > gen.completions[i]) ++wins;
            if (cf.completions[i] < gen.completions[i]) ++losses;
        }
        double p = sign_test_p(wins, wins + losses);
        bool c_ok = losses == 0 || p < 0.01;
        report.note(c_ok, detail::format("C=%.1f gen<=cf sign test w=%d l=%d p=%.4g", cs[ci],
                                         wins, losses, p));
    }
    size_t i01 = 0, i09 = cs.size() - 1;
    report.note(mean_gen[i01] <= mean_cf[i01] && mean_cf[i01] < mean_st[i01] &&
                    mean_cf[i01] <= 0.9 * mean_st[i01],
                detail::format("C=0.1 means gen=%.2f cf=%.2f st=%.2f (cf >=10%% below st)",
                               mean_gen[i01], mean_cf[i01], mean_st[i01]));
    double rel_gap = std::abs(mean_cf[i09] - mean_st[i09]) / ((mean_cf[i09] + mean_st[i09]) / 2);
    report.note(rel_gap <= 0.03,
                detail::format("C=0.9 cf=%.2f st=%.2f gap=%.3f (<=0.03)", mean_cf[i09],
                               mean_st[i09], rel_gap));

    res.pass = report.pass;
    res.detail = report.detail;
    if (report_out) *report_out = report;
    return res;
}

/// Criterion 7 (+8 audit): collision-free vs point-to-multipoint at C=0.1.
inline CriterionResult criterion_7(int threads, int iterations = 200,
                                   TrendReport* report_out = nullptr) {
    CriterionResult res{7, "device-sweep vs point-to-multipoint", false, "", 0};
    TrendReport report;
    for (int u : {40, 60, 80}) {
        ExperimentConfig cfg;
        cfg.num_devices = u;
        cfg.num_files = 30;
        cfg.connectivity = 0.1;
        cfg.mean_erasure = 0.1;
        cfg.iterations = iterations;
        cfg.seed = 0xC7;
        detail::EpisodeBatch cf =
            detail::run_batch(cfg, SchedulerKind::collision_free, true, threads);
        detail::EpisodeBatch pmp = detail::run_batch(cfg, SchedulerKind::pmp, true, threads);
        for (const auto* b : {&cf, &pmp}) {
            report.audited_rounds += b->audited_rounds;
            report.order_violations += b->order_violations;
            report.worst_gap = std::max(report.worst_gap, b->worst_gap);
        }
        int wins = 0, losses = 0;
        for (int i = 0; i < iterations; ++i) {
            if (pmp.completions[i] > cf.completions[i]) ++wins;
            if (pmp.completions[i] < cf.completions[i]) ++losses;
        }
        double p = sign_test_p(wins, wins + losses);
        double mc = detail::mean_of(cf.completions), mp = detail::mean_of(pmp.completions);
        report.note(mc < mp && (losses == 0 || p < 0.01),
                    detail::format("U=%d cf=%.2f pmp=%.2f sign w=%d l=%d p=%.4g", u, mc, mp, wins,
                                   losses, p));
    }
    res.pass = report.pass;
    res.detail = report.detail;
    if (report_out) *report_out = report;
    return res;
}

/// Criterion 8: per-round Thm-2-objective dominance, audited inside the
/// criterion 6 and 7 episode batches.
inline CriterionResult criterion_8(const TrendReport& r6, const TrendReport& r7) {
    CriterionResult res{8, "per-round weight dominance", false, "", 0};
    long long rounds = r6.audited_rounds + r7.audited_rounds;
    long long bad = r6.order_violations + r7.order_violations;
    double worst = std::max(r6.worst_gap, r7.worst_gap);
    res.pass = rounds > 0 && bad == 0;
    res.detail = detail::format("%lld audited rounds, %lld ordering violations, worst gap %.3g",
                                rounds, bad, worst);
    return res;
}

/// Criterion 9: byte-identical sweep output for identical config and seed.
inline CriterionResult criterion_9(int threads) {
    CriterionResult res{9, "sweep determinism", false, "", 0};
    ExperimentConfig cfg;
    cfg.num_devices = 12;
    cfg.num_files = 6;
    cfg.mean_erasure = 0.15;
    cfg.iterations = 5;
    cfg.seed = 0xC9;
    cfg.schedulers = {SchedulerKind::collision_free, SchedulerKind::general, SchedulerKind::pmp,
                      SchedulerKind::single_transmitter};
    cfg.sweep_param = SweepParam::connectivity;
    cfg.sweep_values = {0.6, 0.8, 1.0};
    std::string a = run_sweep(cfg, threads);
    std::string b = run_sweep(cfg, threads);
    res.pass = !a.empty() && a == b;
    res.detail = detail::format("%zu-byte CSV, %s", a.size(),
                                res.pass ? "byte-identical across runs" : "outputs differ");
    return res;
}

inline std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, int threads,
                                                   int heavy_iterations = 200,
                                                   const std::function<void(const CriterionResult&)>&
                                                       emit = nullptr) {
    auto wants = [&](int id) {
        return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end();
    };
    std::vector<CriterionResult> out;
    TrendReport r6, r7;
    bool have6 = false, have7 = false;
    auto push = [&](CriterionResult r, std::chrono::steady_clock::time_point t0) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (emit) emit(r);
        out.push_back(std::move(r));
    };
    for (int id = 1; id <= 9; ++id) {
        if (!wants(id) && !(id == 6 && wants(8)) && !(id == 7 && wants(8))) continue;
        auto t0 = std::chrono::steady_clock::now();
        switch (id) {
            case 1: push(criterion_1(threads), t0); break;
            case 2: push(criterion_2(threads), t0); break;
            case 3: push(criterion_3(threads), t0); break;
            case 4: push(criterion_4(threads), t0); break;
            case 5: push(criterion_5(threads), t0); break;
            case 6:
                push(criterion_6(threads, heavy_iterations, &r6), t0);
                have6 = true;
                break;
            case 7:
                push(criterion_7(threads, heavy_iterations, &r7), t0);
                have7 = true;
                break;
            case 8:
                if (have6 || have7) push(criterion_8(r6, r7), t0);
                break;
            case 9: push(criterion_9(threads), t0); break;
        }
    }
    return out;
}

}  // namespace idnc

#endif  // IDNC_VERIFY_HPP_
