#ifndef IDNC_METRICS_HPP_
#define IDNC_METRICS_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "idnc/network.hpp"

namespace idnc {

/// Per-device delay/erasure bookkeeping. The completion identity
///   completion_round == initial_demand + decoding_delay + erasure_count
/// holds exactly for every completed device: each pre-completion round
/// contributes to exactly one of the three terms.
struct DeviceMetrics {
    int initial_demand = 0;   // |Wants| at episode start, never updated
    int decoding_delay = 0;
    int erasure_count = 0;
    std::optional<int> completion_round;
};

struct EpisodeMetrics {
    std::vector<DeviceMetrics> device;

    static EpisodeMetrics start(const NetworkState& state) {
        EpisodeMetrics m;
        m.device.resize(state.num_devices());
        for (DeviceId u = 0; u < state.num_devices(); ++u)
            m.device[u].initial_demand = state.wants_count(u);
        return m;
    }
};

/// Delivery outcome for one singleton-hearer in a round.
struct ReceptionOutcome {
    DeviceId device;
    int entry;    // plan entry heard
    bool erased;
};

/// Applies one round of delay/erasure accounting. `state` must be the state
/// at the start of the round (before receptions are applied).
///
/// Wanting devices accrue exactly one unit in one counter, or none:
///   transmitter / interference / out-of-range   -> decoding_delay
///   heard one transmission, erased              -> erasure_count
///   delivered but not instantly decodable       -> decoding_delay
///   delivered and instantly decodable           -> (no counter)
inline EpisodeMetrics record_round(EpisodeMetrics metrics, const NetworkState& state,
                                   const TransmissionPlan& plan,
                                   const std::vector<ReceptionOutcome>& outcomes) {
    const HearingSets h = hearing_sets(state, plan);

    std::vector<int> outcome_of(state.num_devices(), -1);
    for (size_t i = 0; i < outcomes.size(); ++i) outcome_of[outcomes[i].device] = static_cast<int>(i);

    for (const auto& e : plan.entries)
        if (e.transmitter && state.wants_mask(*e.transmitter).any())
            metrics.device[*e.transmitter].decoding_delay += 1;
    for (DeviceId u : h.interference) metrics.device[u].decoding_delay += 1;
    for (DeviceId u : h.out_of_range) metrics.device[u].decoding_delay += 1;

    for (const auto& [u, entry] : h.single_hearer) {
        if (!state.wants_mask(u).any()) continue;
        int oi = outcome_of[u];
        if (oi < 0) throw std::logic_error("record_round: missing outcome for singleton-hearer");
        if (outcomes[oi].erased) {
            metrics.device[u].erasure_count += 1;
        } else if (!is_instantly_decodable(plan.entries[entry].combo, u, state)) {
            metrics.device[u].decoding_delay += 1;
        }
    }
    return metrics;
}

/// Estimated completion round from demand, accrued delay and the expected
/// erasure: (demand + delay - eps) / (1 - eps).
inline double anticipated_completion(const EpisodeMetrics& metrics, DeviceId u, double eps) {
    if (eps >= 1.0 || eps < 0.0) throw std::invalid_argument("expected erasure must lie in [0,1)");
    const auto& d = metrics.device[u];
    return (d.initial_demand + d.decoding_delay - eps) / (1.0 - eps);
}

/// Shared layer computation: smallest n >= 1 with a + n/(1-eps) strictly
/// above the maximum; boundary devices are treated as layer 1.
inline int layer_core(double anticipated, double eps, double global_max) {
    double step = 1.0 / (1.0 - eps);
    if (anticipated + step >= global_max) return 1;
    int n = 1 + static_cast<int>(std::floor((global_max - anticipated) * (1.0 - eps)));
    while (anticipated + n * step <= global_max) ++n;  // float-guard around the closed form
    while (n > 1 && anticipated + (n - 1) * step > global_max) --n;
    return n;
}

/// Precomputed per-round scheduling context shared by the schedulers.
struct RoundContext {
    std::vector<double> eps;          // expected erasure per device
    std::vector<double> anticipated;  // valid for wanting devices
    double global_max = 0.0;          // max anticipated over wanting devices
    std::vector<DeviceId> critical;   // sorted
    Bitset critical_mask;
    Bitset wanting;

    bool is_critical(DeviceId u) const { return critical_mask.test(u); }
    int layer(DeviceId u) const { return layer_core(anticipated[u], eps[u], global_max); }
};

inline RoundContext make_round_context(const NetworkState& state, const EpisodeMetrics& metrics) {
    RoundContext ctx;
    const int n = state.num_devices();
    ctx.eps.resize(n);
    ctx.anticipated.assign(n, 0.0);
    ctx.critical_mask = Bitset(n);
    ctx.wanting = state.wanting_mask();
    for (DeviceId u = 0; u < n; ++u) ctx.eps[u] = expected_erasure(state, u);

    ctx.global_max = -std::numeric_limits<double>::infinity();
    for (DeviceId u = 0; u < n; ++u) {
        if (!ctx.wanting.test(u)) continue;
        ctx.anticipated[u] = anticipated_completion(metrics, u, ctx.eps[u]);
        ctx.global_max = std::max(ctx.global_max, ctx.anticipated[u]);
    }
    for (DeviceId u = 0; u < n; ++u) {
        if (!ctx.wanting.test(u)) continue;
        if (ctx.anticipated[u] + 1.0 / (1.0 - ctx.eps[u]) >= ctx.global_max) {
            ctx.critical.push_back(u);
            ctx.critical_mask.set(u);
        }
    }
    return ctx;
}

/// Wanting devices whose next-round delay could raise the maximum anticipated
/// completion time. Both sides of the comparison use pre-round values.
inline std::vector<DeviceId> critical_set(const EpisodeMetrics& metrics, const NetworkState& state) {
    if (!state.wanting_mask().any()) return {};
    return make_round_context(state, metrics).critical;
}

/// Multi-layer index: smallest n >= 1 with anticipated + n/(1-eps) strictly
/// above the global maximum. Boundary devices (critical by the >= rule) are
/// pinned to layer 1 so that layer 1 coincides with the critical set.
inline int layer_index(const EpisodeMetrics& metrics, DeviceId u, double eps, double global_max) {
    return layer_core(anticipated_completion(metrics, u, eps), eps, global_max);
}

inline int layer_index(const EpisodeMetrics& metrics, const NetworkState& state, DeviceId u) {
    RoundContext ctx = make_round_context(state, metrics);
    return layer_index(metrics, u, ctx.eps[u], ctx.global_max);
}

}  // namespace idnc

#endif  // IDNC_METRICS_HPP_
