#ifndef IDNC_NETWORK_HPP_
#define IDNC_NETWORK_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "idnc/types.hpp"

namespace idnc {

/// XOR combination of files, modeled at the set level: the payload algebra
/// never matters for scheduling, only membership does.
struct FileCombination {
    std::vector<FileId> files;  // sorted, nonempty when attached to a plan
};

/// One simultaneous transmission. `transmitter == nullopt` marks the virtual
/// base station of the point-to-multipoint baseline: it covers every device
/// and erases with `bs_erasure` instead of the erasure matrix.
struct PlanEntry {
    std::optional<DeviceId> transmitter;
    FileCombination combo;
    std::vector<DeviceId> targets;  // sorted
    double bs_erasure = 0.0;
};

struct TransmissionPlan {
    std::vector<PlanEntry> entries;  // sorted by transmitter id, base station last

    bool empty() const { return entries.empty(); }
    int target_count() const {
        int n = 0;
        for (const auto& e : entries) n += static_cast<int>(e.targets.size());
        return n;
    }
};

/// Snapshot of the dissemination state: topology, channel erasures, and the
/// per-device Has/Wants partition. Value type; all mutating operations take a
/// state and return an updated copy.
class NetworkState {
  public:
    /// Validates every structural invariant: symmetric unit-diagonal
    /// connectivity, connected topology, zero-diagonal erasures in [0,1),
    /// Wants = complement of Has, and each file held somewhere.
    static NetworkState create(int num_devices, int num_files,
                               std::vector<std::vector<bool>> connectivity,
                               std::vector<std::vector<double>> erasures,
                               std::vector<std::vector<FileId>> has) {
        NetworkState s;
        s.num_devices_ = num_devices;
        s.num_files_ = num_files;
        if (num_devices < 1) throw std::invalid_argument("need at least one device");
        if (num_files < 1) throw std::invalid_argument("need at least one file");
        if (static_cast<int>(connectivity.size()) != num_devices ||
            static_cast<int>(erasures.size()) != num_devices ||
            static_cast<int>(has.size()) != num_devices)
            throw std::invalid_argument("matrix/set dimensions do not match num_devices");

        for (int u = 0; u < num_devices; ++u) {
            if (static_cast<int>(connectivity[u].size()) != num_devices ||
                static_cast<int>(erasures[u].size()) != num_devices)
                throw std::invalid_argument("matrix row size mismatch");
            if (!connectivity[u][u]) throw std::invalid_argument("connectivity diagonal must be true");
            if (erasures[u][u] != 0.0) throw std::invalid_argument("erasure diagonal must be zero");
            for (int v = 0; v < num_devices; ++v) {
                if (connectivity[u][v] != connectivity[v][u])
                    throw std::invalid_argument("connectivity must be symmetric");
                if (erasures[u][v] < 0.0 || erasures[u][v] >= 1.0)
                    throw std::invalid_argument("erasures must lie in [0,1)");
            }
        }

        s.connectivity_ = std::move(connectivity);
        s.erasures_ = std::move(erasures);
        if (!s.is_connected()) throw std::invalid_argument("topology must be connected");

        s.coverage_.assign(num_devices, Bitset(num_devices));
        s.coverage_lists_.resize(num_devices);
        for (int u = 0; u < num_devices; ++u)
            for (int v = 0; v < num_devices; ++v)
                if (s.connectivity_[u][v]) {
                    s.coverage_[u].set(v);
                    s.coverage_lists_[u].push_back(v);
                }

        s.has_.assign(num_devices, Bitset(num_files));
        s.wants_.assign(num_devices, Bitset(num_files));
        s.wanting_ = Bitset(num_devices);
        std::vector<bool> held(num_files, false);
        for (int u = 0; u < num_devices; ++u) {
            for (FileId f : has[u]) {
                if (f < 0 || f >= num_files) throw std::invalid_argument("file id out of range");
                s.has_[u].set(f);
                held[f] = true;
            }
            for (FileId f = 0; f < num_files; ++f)
                if (!s.has_[u].test(f)) s.wants_[u].set(f);
            if (s.wants_[u].any()) s.wanting_.set(u);
        }
        for (int f = 0; f < num_files; ++f)
            if (!held[f]) throw std::invalid_argument("every file must be held by at least one device");
        return s;
    }

    int num_devices() const { return num_devices_; }
    int num_files() const { return num_files_; }
    int round() const { return round_; }

    bool connected(DeviceId u, DeviceId v) const { return connectivity_[u][v]; }
    double erasure(DeviceId from, DeviceId to) const { return erasures_[from][to]; }

    const Bitset& coverage_mask(DeviceId u) const { return coverage_[u]; }
    const std::vector<DeviceId>& coverage_list(DeviceId u) const { return coverage_lists_[u]; }

    const Bitset& has_mask(DeviceId u) const { return has_[u]; }
    const Bitset& wants_mask(DeviceId u) const { return wants_[u]; }
    bool has(DeviceId u, FileId f) const { return has_[u].test(f); }
    bool wants(DeviceId u, FileId f) const { return wants_[u].test(f); }
    int wants_count(DeviceId u) const { return wants_[u].count(); }

    /// Mask of devices with nonempty Wants.
    const Bitset& wanting_mask() const { return wanting_; }
    bool all_complete() const { return !wanting_.any(); }

    std::vector<DeviceId> wanting_devices() const { return wanting_.to_vector(); }

  private:
    friend NetworkState apply_reception(NetworkState, DeviceId, const FileCombination&);
    friend NetworkState advance_round(NetworkState);

    bool is_connected() const {
        std::vector<bool> seen(num_devices_, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int visited = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < num_devices_; ++v)
                if (connectivity_[u][v] && !seen[v]) {
                    seen[v] = true;
                    ++visited;
                    stack.push_back(v);
                }
        }
        return visited == num_devices_;
    }

    int num_devices_ = 0;
    int num_files_ = 0;
    int round_ = 0;
    std::vector<std::vector<bool>> connectivity_;
    std::vector<std::vector<double>> erasures_;
    std::vector<Bitset> coverage_;
    std::vector<std::vector<DeviceId>> coverage_lists_;
    std::vector<Bitset> has_;
    std::vector<Bitset> wants_;
    Bitset wanting_;
};

/// Devices in transmission range of u, including u itself (unit diagonal).
inline std::vector<DeviceId> coverage_zone(const NetworkState& state, DeviceId u) {
    if (u < 0 || u >= state.num_devices()) throw std::out_of_range("device id out of range");
    return state.coverage_list(u);
}

/// Fraction of true connectivity entries, diagonal included, so a fully
/// connected network scores exactly 1.
inline double connectivity_index(const NetworkState& state) {
    int u2 = state.num_devices() * state.num_devices();
    int edges = 0;
    for (DeviceId u = 0; u < state.num_devices(); ++u)
        edges += state.coverage_mask(u).count();
    return static_cast<double>(edges) / u2;
}

/// Average incoming erasure over the coverage zone of u (zero diagonal term
/// included in the mean), the scheduling-time estimate of the per-round
/// erasure probability under uniformly likely transmitters.
inline double expected_erasure(const NetworkState& state, DeviceId u) {
    const auto& zone = state.coverage_list(u);
    if (zone.size() < 2) throw std::invalid_argument("isolated device has no expected erasure");
    double sum = 0.0;
    for (DeviceId v : zone) sum += state.erasure(v, u);
    return sum / static_cast<double>(zone.size());
}

/// True iff the combination contains exactly one wanted file and every other
/// file in it is already held (so the XOR resolves to the wanted file).
inline bool is_instantly_decodable(const FileCombination& combo, DeviceId u,
                                   const NetworkState& state) {
    int wanted = 0;
    for (FileId f : combo.files) {
        if (state.wants(u, f)) {
            ++wanted;
        } else if (!state.has(u, f)) {
            return false;  // unreachable while Wants complements Has
        }
    }
    return wanted == 1;
}

/// Moves the unique wanted file of the combination from Wants to Has.
inline NetworkState apply_reception(NetworkState state, DeviceId u,
                                    const FileCombination& combo) {
    if (!is_instantly_decodable(combo, u, state))
        throw std::logic_error("apply_reception: combination is not instantly decodable");
    for (FileId f : combo.files)
        if (state.wants(u, f)) {
            state.has_[u].set(f);
            state.wants_[u].reset(f);
            if (!state.wants_[u].any()) state.wanting_.reset(u);
            return state;
        }
    throw std::logic_error("apply_reception: no wanted file found");
}

inline NetworkState advance_round(NetworkState state) {
    ++state.round_;
    return state;
}

/// Per-round hearing classification. Transmitters hear zero transmissions and
/// appear in none of the three classes; the interference and out-of-range
/// sets contain only wanting non-transmitters.
struct HearingSets {
    std::vector<DeviceId> interference;                 // wanting, >= 2 zones
    std::vector<DeviceId> out_of_range;                 // wanting, 0 zones
    std::vector<std::pair<DeviceId, int>> single_hearer;  // device -> plan entry index
};

inline HearingSets hearing_sets(const NetworkState& state, const TransmissionPlan& plan) {
    const int n = state.num_devices();
    std::vector<bool> is_tx(n, false);
    for (const auto& e : plan.entries)
        if (e.transmitter) is_tx[*e.transmitter] = true;

    HearingSets out;
    for (DeviceId u = 0; u < n; ++u) {
        if (is_tx[u]) continue;
        int heard = 0;
        int entry = -1;
        for (size_t i = 0; i < plan.entries.size(); ++i) {
            const auto& e = plan.entries[i];
            bool covered = e.transmitter ? state.connected(*e.transmitter, u) : true;
            if (covered) {
                ++heard;
                entry = static_cast<int>(i);
            }
        }
        bool wanting = state.wants_mask(u).any();
        if (heard == 1) {
            out.single_hearer.emplace_back(u, entry);
        } else if (wanting) {
            if (heard == 0)
                out.out_of_range.push_back(u);
            else
                out.interference.push_back(u);
        }
    }
    return out;
}

/// Validates the TransmissionPlan contract against a state. Used by tests and
/// by the episode loop in debug checks.
inline void validate_plan(const NetworkState& state, const TransmissionPlan& plan) {
    std::vector<bool> seen(state.num_devices(), false);
    for (const auto& e : plan.entries) {
        if (e.combo.files.empty()) throw std::logic_error("plan entry with empty combination");
        if (e.transmitter) {
            DeviceId a = *e.transmitter;
            if (seen[a]) throw std::logic_error("duplicate transmitter in plan");
            seen[a] = true;
            for (FileId f : e.combo.files)
                if (!state.has(a, f)) throw std::logic_error("transmitter does not hold combo file");
        }
        for (DeviceId t : e.targets) {
            if (e.transmitter && !state.connected(*e.transmitter, t))
                throw std::logic_error("target outside coverage zone");
            if (!state.wants_mask(t).any()) throw std::logic_error("target has empty wants");
            if (!is_instantly_decodable(e.combo, t, state))
                throw std::logic_error("target cannot instantly decode combination");
        }
    }
}

}  // namespace idnc

#endif  // IDNC_NETWORK_HPP_
