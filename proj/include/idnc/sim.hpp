#ifndef IDNC_SIM_HPP_
#define IDNC_SIM_HPP_

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "idnc/rng.hpp"
#include "idnc/scheduler.hpp"

namespace idnc {

// ---------------------------------------------------------------------------
// Experiment configuration

enum class SweepParam { connectivity, devices, files, erasure };

inline const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::connectivity: return "connectivity";
        case SweepParam::devices: return "devices";
        case SweepParam::files: return "files";
        case SweepParam::erasure: return "erasure";
    }
    return "?";
}

struct ExperimentConfig {
    int num_devices = 60;
    int num_files = 30;
    double connectivity = 0.4;
    double mean_erasure = 0.1;
    double erasure_jitter = 0.05;
    double pmp_factor = 2.0;
    std::vector<SchedulerKind> schedulers = {SchedulerKind::collision_free};
    int max_cluster_size = 3;
    int cluster_member_pool = 20;
    int iterations = 200;
    uint64_t seed = 1;
    /// Run the single-transmitter baseline on an idealized complete overlay
    /// instead of the true partial topology.
    bool baseline_complete_overlay = false;

    SweepParam sweep_param = SweepParam::connectivity;
    std::vector<double> sweep_values;  // empty: single point at current config

    void validate() const {
        if (num_devices < 2) throw std::invalid_argument("num_devices must be >= 2");
        if (num_files < 1) throw std::invalid_argument("num_files must be >= 1");
        if (connectivity <= 1.0 / num_devices || connectivity > 1.0)
            throw std::invalid_argument("connectivity index must lie in (1/U, 1]");
        if (mean_erasure <= 0.0 || mean_erasure >= 1.0)
            throw std::invalid_argument("mean erasure must lie in (0,1)");
        if (mean_erasure * pmp_factor >= 1.0)
            throw std::invalid_argument("pmp erasure must stay below 1");
        if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
        if (max_cluster_size < 1) throw std::invalid_argument("max_cluster_size must be >= 1");
    }

    SchedulerOptions scheduler_options() const {
        SchedulerOptions o;
        o.max_cluster_size = max_cluster_size;
        o.member_pool_limit = cluster_member_pool;
        o.pmp_erasure = mean_erasure * pmp_factor;
        return o;
    }
};

// ---------------------------------------------------------------------------
// Instance generation

/// Symmetric unit-diagonal connected adjacency matrix whose connectivity
/// index lands within rounding distance of `target`. Uniform random edge
/// placement, redrawn on disconnection, then spanning-tree patch and random
/// fill as a last resort.
inline std::vector<std::vector<bool>> generate_topology(int num_devices, double target, Rng& rng) {
    const int u = num_devices;
    auto edges_needed = static_cast<long long>(std::llround((target * u * u - u) / 2.0));
    const long long max_edges = static_cast<long long>(u) * (u - 1) / 2;
    if (edges_needed < u - 1)
        throw std::invalid_argument("connectivity index too small for a connected topology");
    if (edges_needed > max_edges) edges_needed = max_edges;

    std::vector<std::pair<int, int>> all_pairs;
    all_pairs.reserve(max_edges);
    for (int a = 0; a < u; ++a)
        for (int b = a + 1; b < u; ++b) all_pairs.emplace_back(a, b);

    auto connected = [&](const std::vector<std::vector<bool>>& m) {
        std::vector<bool> seen(u, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < u; ++b)
                if (m[a][b] && !seen[b]) {
                    seen[b] = true;
                    ++count;
                    stack.push_back(b);
                }
        }
        return count == u;
    };

    std::vector<std::vector<bool>> m;
    for (int attempt = 0; attempt < 50; ++attempt) {
        m.assign(u, std::vector<bool>(u, false));
        for (int a = 0; a < u; ++a) m[a][a] = true;
        // Partial Fisher-Yates: the first `edges_needed` entries are a
        // uniform random subset of the pairs.
        for (long long i = 0; i < edges_needed; ++i) {
            long long j = i + static_cast<long long>(rng.below(all_pairs.size() - i));
            std::swap(all_pairs[i], all_pairs[j]);
            m[all_pairs[i].first][all_pairs[i].second] = true;
            m[all_pairs[i].second][all_pairs[i].first] = true;
        }
        if (connected(m)) return m;
    }

    // Patch: random recursive spanning tree plus uniform fill.
    m.assign(u, std::vector<bool>(u, false));
    for (int a = 0; a < u; ++a) m[a][a] = true;
    std::vector<int> perm(u);
    for (int i = 0; i < u; ++i) perm[i] = i;
    for (int i = u - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    long long placed = 0;
    for (int i = 1; i < u; ++i) {
        int a = perm[i];
        int b = perm[rng.below(i)];
        m[a][b] = m[b][a] = true;
        ++placed;
    }
    std::vector<std::pair<int, int>> free_pairs;
    for (auto& [a, b] : all_pairs)
        if (!m[a][b]) free_pairs.emplace_back(a, b);
    for (long long i = 0; i < edges_needed - placed; ++i) {
        long long j = i + static_cast<long long>(rng.below(free_pairs.size() - i));
        std::swap(free_pairs[i], free_pairs[j]);
        m[free_pairs[i].first][free_pairs[i].second] = true;
        m[free_pairs[i].second][free_pairs[i].first] = true;
    }
    return m;
}

/// Per-link erasures drawn uniformly around the mean, clipped away from 0
/// (infinite clique weights) and 1.
inline std::vector<std::vector<double>> draw_erasures(int num_devices, double mean, double jitter,
                                                      Rng& rng) {
    std::vector<std::vector<double>> e(num_devices, std::vector<double>(num_devices, 0.0));
    for (int a = 0; a < num_devices; ++a)
        for (int b = 0; b < num_devices; ++b) {
            if (a == b) continue;
            double v = rng.uniform(mean - jitter, mean + jitter);
            e[a][b] = std::min(0.99, std::max(0.01, v));
        }
    return e;
}

/// Initial Has sets: device u receives each file independently with
/// probability 1 - (its expected erasure over its zone); a repair pass then
/// hands every unheld file to one uniformly chosen device.
inline std::vector<std::vector<FileId>> initialize_sides(
    const std::vector<std::vector<bool>>& connectivity,
    const std::vector<std::vector<double>>& erasures, int num_files, Rng& rng) {
    const int u_count = static_cast<int>(connectivity.size());
    std::vector<double> eps(u_count, 0.0);
    for (int v = 0; v < u_count; ++v) {
        int zone = 0;
        double sum = 0.0;
        for (int w = 0; w < u_count; ++w)
            if (connectivity[v][w]) {
                ++zone;
                sum += erasures[w][v];
            }
        eps[v] = sum / zone;
    }
    std::vector<std::vector<FileId>> has(u_count);
    std::vector<bool> held(num_files, false);
    for (int v = 0; v < u_count; ++v)
        for (FileId f = 0; f < num_files; ++f)
            if (rng.bernoulli(1.0 - eps[v])) {
                has[v].push_back(f);
                held[f] = true;
            }
    for (FileId f = 0; f < num_files; ++f)
        if (!held[f]) {
            int v = static_cast<int>(rng.below(u_count));
            insert_sorted(has[v], f);
        }
    return has;
}

/// Draws a full random instance for one episode.
inline NetworkState make_instance(const ExperimentConfig& cfg, Rng& rng,
                                  bool complete_overlay = false) {
    std::vector<std::vector<bool>> conn;
    if (complete_overlay) {
        conn.assign(cfg.num_devices, std::vector<bool>(cfg.num_devices, true));
        // Keep the RNG stream aligned with the partial-topology draw.
        Rng scratch(rng.raw());
        generate_topology(cfg.num_devices, cfg.connectivity, scratch);
    } else {
        conn = generate_topology(cfg.num_devices, cfg.connectivity, rng);
    }
    auto erasures = draw_erasures(cfg.num_devices, cfg.mean_erasure, cfg.erasure_jitter, rng);
    auto has = initialize_sides(conn, erasures, cfg.num_files, rng);
    return NetworkState::create(cfg.num_devices, cfg.num_files, std::move(conn),
                                std::move(erasures), std::move(has));
}

// ---------------------------------------------------------------------------
// Episode execution

struct RoundLog {
    TransmissionPlan plan;
    // Thm-2 objective weights of all three device schedulers on this round's
    // state; filled only when weight auditing is enabled.
    double weight_general = 0.0;
    double weight_collision_free = 0.0;
    double weight_single = 0.0;
};

struct EpisodeResult {
    int completion_time = 0;
    EpisodeMetrics metrics;
    std::vector<RoundLog> rounds;
};

struct EpisodeOptions {
    bool keep_round_log = false;
    bool audit_weights = false;  // implies keep_round_log
    int round_cap_factor = 100;  // cap = factor * (files + devices)
};

/// One transmission round: draws per-link erasures for every device hearing
/// exactly one transmission, applies successful instant decodes, advances the
/// round counter and stamps completions.
inline std::pair<NetworkState, EpisodeMetrics> run_round(NetworkState state,
                                                         EpisodeMetrics metrics,
                                                         const TransmissionPlan& plan, Rng& rng) {
    HearingSets h = hearing_sets(state, plan);
    std::vector<ReceptionOutcome> outcomes;
    outcomes.reserve(h.single_hearer.size());
    for (auto [u, entry] : h.single_hearer) {
        const PlanEntry& e = plan.entries[entry];
        double eps = e.transmitter ? state.erasure(*e.transmitter, u) : e.bs_erasure;
        outcomes.push_back({u, entry, rng.bernoulli(eps)});
    }

    metrics = record_round(std::move(metrics), state, plan, outcomes);

    for (const auto& o : outcomes) {
        if (o.erased) continue;
        const FileCombination& combo = plan.entries[o.entry].combo;
        if (state.wants_mask(o.device).any() && is_instantly_decodable(combo, o.device, state))
            state = apply_reception(std::move(state), o.device, combo);
    }
    state = advance_round(std::move(state));
    for (DeviceId u = 0; u < state.num_devices(); ++u)
        if (!state.wants_mask(u).any() && !metrics.device[u].completion_round)
            metrics.device[u].completion_round = state.round();
    return {std::move(state), std::move(metrics)};
}

namespace detail {

inline void check_progress_possible(const NetworkState& state) {
    for (DeviceId y = 0; y < state.num_devices(); ++y) {
        if (!state.wants_mask(y).any()) continue;
        bool reachable = false;
        for (DeviceId x : state.coverage_list(y))
            if (x != y && intersects(state.has_mask(x), state.wants_mask(y))) {
                reachable = true;
                break;
            }
        if (!reachable)
            throw std::logic_error("progress property violated: wanting device unreachable");
    }
}

}  // namespace detail

/// Runs plan->round cycles until every Wants set empties. Asserts the
/// completion identity for every device on exit.
inline EpisodeResult run_episode(NetworkState state, SchedulerKind kind,
                                 const SchedulerOptions& sched_opt, Rng& rng,
                                 const EpisodeOptions& opt = {}) {
    EpisodeResult result;
    EpisodeMetrics metrics = EpisodeMetrics::start(state);
    for (DeviceId u = 0; u < state.num_devices(); ++u)
        if (!state.wants_mask(u).any()) metrics.device[u].completion_round = 0;

    const int cap = opt.round_cap_factor * (state.num_files() + state.num_devices());
    while (!state.all_complete()) {
        if (state.round() >= cap)
            throw std::runtime_error("episode exceeded its round cap; progress bug");
        detail::check_progress_possible(state);

        RoundContext ctx = make_round_context(state, metrics);
        TransmissionPlan plan = make_plan(state, ctx, kind, sched_opt);
        if (plan.target_count() == 0)
            throw std::logic_error("scheduler returned a non-serving plan");

        if (opt.keep_round_log || opt.audit_weights) {
            RoundLog log;
            log.plan = plan;
            if (opt.audit_weights) {
                auto weight_of = [&](SchedulerKind k) {
                    TransmissionPlan p = (k == kind) ? plan : make_plan(state, ctx, k, sched_opt);
                    return plan_critical_weight(state, ctx, p);
                };
                log.weight_general = weight_of(SchedulerKind::general);
                log.weight_collision_free = weight_of(SchedulerKind::collision_free);
                log.weight_single = weight_of(SchedulerKind::single_transmitter);
            }
            result.rounds.push_back(std::move(log));
        }

        auto [next_state, next_metrics] = run_round(std::move(state), std::move(metrics), plan, rng);
        state = std::move(next_state);
        metrics = std::move(next_metrics);
    }

    for (DeviceId u = 0; u < state.num_devices(); ++u) {
        const DeviceMetrics& d = metrics.device[u];
        if (!d.completion_round)
            throw std::logic_error("device never completed");
        if (*d.completion_round != d.initial_demand + d.decoding_delay + d.erasure_count)
            throw std::logic_error("completion identity violated");
        result.completion_time = std::max(result.completion_time, *d.completion_round);
    }
    result.metrics = std::move(metrics);
    return result;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Runs `fn(i)` for i in [0, jobs) on up to `threads` workers. Results must
/// be written to preallocated slots so aggregation stays order-independent.
inline void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || jobs <= 1) {
        for (int i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int n = std::min(jobs, threads);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= jobs) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

inline ExperimentConfig config_at(const ExperimentConfig& base, SweepParam param, double value) {
    ExperimentConfig c = base;
    switch (param) {
        case SweepParam::connectivity: c.connectivity = value; break;
        case SweepParam::devices: c.num_devices = static_cast<int>(value); break;
        case SweepParam::files: c.num_files = static_cast<int>(value); break;
        case SweepParam::erasure: c.mean_erasure = value; break;
    }
    return c;
}

struct SweepCell {
    double sweep_value = 0.0;
    SchedulerKind scheduler = SchedulerKind::collision_free;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::vector<int> completions;  // per iteration
};

/// Mean completion time with standard error for every (sweep value,
/// scheduler) pair. Episodes are independent and parallel; per-episode seeds
/// derive from (master seed, sweep index, iteration), shared across
/// schedulers so per-seed comparisons are paired.
inline std::vector<SweepCell> run_sweep_cells(const ExperimentConfig& cfg,
                                              int threads = static_cast<int>(
                                                  std::thread::hardware_concurrency())) {
    cfg.validate();
    std::vector<double> values = cfg.sweep_values;
    if (values.empty()) {
        switch (cfg.sweep_param) {
            case SweepParam::connectivity: values = {cfg.connectivity}; break;
            case SweepParam::devices: values = {static_cast<double>(cfg.num_devices)}; break;
            case SweepParam::files: values = {static_cast<double>(cfg.num_files)}; break;
            case SweepParam::erasure: values = {cfg.mean_erasure}; break;
        }
    }

    const int n_sched = static_cast<int>(cfg.schedulers.size());
    const int n_vals = static_cast<int>(values.size());
    std::vector<SweepCell> cells(n_vals * n_sched);
    for (int v = 0; v < n_vals; ++v)
        for (int s = 0; s < n_sched; ++s) {
            auto& c = cells[v * n_sched + s];
            c.sweep_value = values[v];
            c.scheduler = cfg.schedulers[s];
            c.completions.assign(cfg.iterations, 0);
        }

    const int jobs = n_vals * n_sched * cfg.iterations;
    parallel_for(jobs, threads, [&](int job) {
        int it = job % cfg.iterations;
        int s = (job / cfg.iterations) % n_sched;
        int v = job / (cfg.iterations * n_sched);
        ExperimentConfig point = config_at(cfg, cfg.sweep_param, values[v]);
        point.validate();
        SchedulerKind kind = cfg.schedulers[s];

        uint64_t instance_seed = derive_seed(cfg.seed, static_cast<uint64_t>(v), static_cast<uint64_t>(it));
        Rng instance_rng(instance_seed);
        bool overlay = point.baseline_complete_overlay && kind == SchedulerKind::single_transmitter;
        NetworkState state = make_instance(point, instance_rng, overlay);
        Rng episode_rng(derive_seed(instance_seed, 1000 + static_cast<uint64_t>(kind), 0));
        EpisodeResult r = run_episode(std::move(state), kind, point.scheduler_options(), episode_rng);
        cells[(v * n_sched + s)].completions[it] = r.completion_time;
    });

    for (auto& c : cells) {
        double sum = 0.0;
        for (int x : c.completions) sum += x;
        c.mean = sum / c.completions.size();
        double varsum = 0.0;
        for (int x : c.completions) varsum += (x - c.mean) * (x - c.mean);
        int n = static_cast<int>(c.completions.size());
        c.stderr_ = n > 1 ? std::sqrt(varsum / (n - 1) / n) : 0.0;
    }
    return cells;
}

inline std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<SweepCell>& cells) {
    std::string out = "sweep_param,sweep_value,scheduler,mean_completion,stderr,iterations,seed\n";
    char buf[256];
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof(buf), "%s,%.6g,%s,%.6f,%.6f,%d,%llu\n",
                      to_string(cfg.sweep_param), c.sweep_value, to_string(c.scheduler), c.mean,
                      c.stderr_, static_cast<int>(c.completions.size()),
                      static_cast<unsigned long long>(cfg.seed));
        out += buf;
    }
    return out;
}

inline std::string raw_csv(const ExperimentConfig& cfg, const std::vector<SweepCell>& cells) {
    std::string out = "sweep_param,sweep_value,scheduler,iteration,completion\n";
    char buf[256];
    for (const auto& c : cells)
        for (size_t it = 0; it < c.completions.size(); ++it) {
            std::snprintf(buf, sizeof(buf), "%s,%.6g,%s,%zu,%d\n", to_string(cfg.sweep_param),
                          c.sweep_value, to_string(c.scheduler), it, c.completions[it]);
            out += buf;
        }
    return out;
}

inline std::string run_sweep(const ExperimentConfig& cfg,
                             int threads = static_cast<int>(std::thread::hardware_concurrency())) {
    return sweep_csv(cfg, run_sweep_cells(cfg, threads));
}

}  // namespace idnc

#endif  // IDNC_SIM_HPP_
