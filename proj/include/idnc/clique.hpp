#ifndef IDNC_CLIQUE_HPP_
#define IDNC_CLIQUE_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "idnc/types.hpp"

namespace idnc {

/// Lexicographically ordered (primary, coverage, support) weight used by the
/// schedulers. Addition and comparisons are component-wise / lexicographic;
/// all components are nonnegative by construction.
struct TripleWeight {
    double primary = 0.0;
    double coverage = 0.0;
    double support = 0.0;

    TripleWeight& operator+=(const TripleWeight& o) {
        primary += o.primary;
        coverage += o.coverage;
        support += o.support;
        return *this;
    }
    friend TripleWeight operator+(TripleWeight a, const TripleWeight& b) { return a += b; }

    friend bool operator<(const TripleWeight& a, const TripleWeight& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        if (a.coverage != b.coverage) return a.coverage < b.coverage;
        return a.support < b.support;
    }
    friend bool operator<=(const TripleWeight& a, const TripleWeight& b) { return !(b < a); }

    static TripleWeight component_max(const TripleWeight& a, const TripleWeight& b) {
        return {std::max(a.primary, b.primary), std::max(a.coverage, b.coverage),
                std::max(a.support, b.support)};
    }
};

namespace detail {
inline TripleWeight weight_max(const TripleWeight& a, const TripleWeight& b) {
    return TripleWeight::component_max(a, b);
}
inline double weight_max(double a, double b) { return std::max(a, b); }
}  // namespace detail

/// Undirected vertex-weighted graph with symmetric adjacency, false diagonal
/// and nonnegative weights.
template <class W>
struct WeightedGraphT {
    int n = 0;
    std::vector<W> weights;
    std::vector<Bitset> adj;

    WeightedGraphT() = default;
    explicit WeightedGraphT(int n_) : n(n_), weights(n_), adj(n_, Bitset(n_)) {}

    void add_edge(int a, int b) {
        if (a == b) throw std::invalid_argument("self loops are not allowed");
        adj[a].set(b);
        adj[b].set(a);
    }
    bool adjacent(int a, int b) const { return adj[a].test(b); }
};

using WeightedGraph = WeightedGraphT<double>;

struct CliqueSearchOptions {
    /// Explicit failure rather than a silent suboptimal result.
    uint64_t node_budget = 200'000'000;
    /// Vertices that must be part of the returned clique (used for the
    /// targeting re-selection pass of the schedulers).
    std::vector<int> forced;
};

namespace detail {

template <class W>
class CliqueSolver {
  public:
    CliqueSolver(const WeightedGraphT<W>& g, const CliqueSearchOptions& opt)
        : g_(g), opt_(opt) {}

    std::vector<int> solve(W* best_weight_out) {
        best_set_.clear();
        best_weight_ = W{};
        nodes_ = 0;

        std::vector<int> cand;
        std::vector<int> base;
        W base_weight{};
        if (!opt_.forced.empty()) {
            // Forced vertices must form a clique themselves.
            for (size_t i = 0; i < opt_.forced.size(); ++i)
                for (size_t j = i + 1; j < opt_.forced.size(); ++j)
                    if (!g_.adjacent(opt_.forced[i], opt_.forced[j]))
                        throw std::logic_error("forced vertices are not a clique");
            base = opt_.forced;
            std::sort(base.begin(), base.end());
            for (int v : base) base_weight += g_.weights[v];
            for (int v = 0; v < g_.n; ++v) {
                bool ok = !std::binary_search(base.begin(), base.end(), v);
                for (int f : base) ok = ok && g_.adjacent(f, v);
                if (ok) cand.push_back(v);
            }
            best_set_ = base;
            best_weight_ = base_weight;
        } else {
            cand.resize(g_.n);
            for (int v = 0; v < g_.n; ++v) cand[v] = v;
            // The empty clique is the initial incumbent.
        }

        expand(base, base_weight, cand);
        if (best_weight_out) *best_weight_out = best_weight_;
        return best_set_;
    }

  private:
    // Candidates are processed in ascending id order with the include branch
    // explored before any candidate with a larger id, so cliques are first
    // visited in lexicographic order of their sorted vertex sequences. With
    // strict-improvement incumbent updates the final incumbent is the
    // lexicographically smallest maximum-weight clique.
    void expand(std::vector<int>& current, W current_weight, const std::vector<int>& cand) {
        if (++nodes_ > opt_.node_budget)
            throw std::runtime_error("clique search exceeded its node budget");
        if (cand.empty()) return;

        if (current_weight + bound(cand) <= best_weight_) return;

        // Suffix weight sums give a cheap in-loop bound.
        std::vector<W> suffix(cand.size() + 1);
        for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i)
            suffix[i] = suffix[i + 1] + g_.weights[cand[i]];

        std::vector<int> next;
        next.reserve(cand.size());
        for (size_t i = 0; i < cand.size(); ++i) {
            if (current_weight + suffix[i] <= best_weight_) return;
            int v = cand[i];
            current.push_back(v);
            W w = current_weight + g_.weights[v];
            if (best_weight_ < w) {
                best_weight_ = w;
                best_set_ = current;
            }
            next.clear();
            for (size_t j = i + 1; j < cand.size(); ++j)
                if (g_.adjacent(v, cand[j])) next.push_back(cand[j]);
            expand(current, w, next);
            current.pop_back();
        }
    }

    // Greedy-coloring upper bound: any clique takes at most one vertex per
    // color class, so the per-component class maxima sum to a valid bound.
    W bound(const std::vector<int>& cand) {
        if (cand.size() <= 8) {
            W s{};
            for (int v : cand) s += g_.weights[v];
            return s;
        }
        class_masks_.clear();
        class_max_.clear();
        for (int v : cand) {
            bool placed = false;
            for (size_t c = 0; c < class_masks_.size(); ++c) {
                if (!intersects(class_masks_[c], g_.adj[v])) {
                    class_masks_[c].set(v);
                    class_max_[c] = weight_max(class_max_[c], g_.weights[v]);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                class_masks_.emplace_back(g_.n);
                class_masks_.back().set(v);
                class_max_.push_back(g_.weights[v]);
            }
        }
        W s{};
        for (const W& m : class_max_) s += m;
        return s;
    }

    const WeightedGraphT<W>& g_;
    const CliqueSearchOptions& opt_;
    std::vector<int> best_set_;
    W best_weight_{};
    uint64_t nodes_ = 0;
    std::vector<Bitset> class_masks_;
    std::vector<W> class_max_;
};

}  // namespace detail

/// Exact maximum-weight clique. Among equal-weight optima returns the
/// lexicographically smallest vertex set (the empty set counts as smallest).
template <class W>
std::vector<int> max_weight_clique(const WeightedGraphT<W>& g,
                                   const CliqueSearchOptions& opt = {},
                                   W* best_weight = nullptr) {
    detail::CliqueSolver<W> solver(g, opt);
    return solver.solve(best_weight);
}

/// Exhaustive subset scan with the same tie-break; test oracle only.
template <class W>
std::vector<int> brute_force_clique(const WeightedGraphT<W>& g, W* best_weight = nullptr) {
    if (g.n > 20) throw std::invalid_argument("brute_force_clique: n > 20");
    std::vector<uint32_t> adj_bits(g.n, 0);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.adjacent(a, b)) adj_bits[a] |= (1u << b);

    std::vector<int> best;  // empty clique
    W best_w{};
    for (uint32_t s = 1; s < (1u << g.n); ++s) {
        bool clique = true;
        for (uint32_t t = s; t && clique; t &= t - 1) {
            int v = __builtin_ctz(t);
            uint32_t others = s & ~(1u << v);
            clique = (others & ~adj_bits[v]) == 0;
        }
        if (!clique) continue;
        W w{};
        std::vector<int> set;
        for (uint32_t t = s; t; t &= t - 1) {  // ascending ids: canonical sum order
            int v = __builtin_ctz(t);
            w += g.weights[v];
            set.push_back(v);
        }
        if (best_w < w || (!(w < best_w) && set < best)) {
            best_w = w;
            best = set;
        }
    }
    if (best_weight) *best_weight = best_w;
    return best;
}

}  // namespace idnc

#endif  // IDNC_CLIQUE_HPP_
