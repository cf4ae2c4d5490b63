#ifndef IDNC_TESTS_HELPERS_HPP_
#define IDNC_TESTS_HELPERS_HPP_

#include <vector>

#include "idnc/idnc.hpp"

namespace idnc::test {

/// Network from an edge list with uniform off-diagonal erasure.
inline NetworkState make_network(int devices, int files,
                                 const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::vector<FileId>> has, double erasure = 0.1) {
    std::vector<std::vector<bool>> conn(devices, std::vector<bool>(devices, false));
    for (int u = 0; u < devices; ++u) conn[u][u] = true;
    for (auto [a, b] : edges) conn[a][b] = conn[b][a] = true;
    std::vector<std::vector<double>> eras(devices, std::vector<double>(devices, 0.0));
    for (int a = 0; a < devices; ++a)
        for (int b = 0; b < devices; ++b)
            if (a != b) eras[a][b] = erasure;
    return NetworkState::create(devices, files, std::move(conn), std::move(eras), std::move(has));
}

inline NetworkState complete_network(int devices, int files, std::vector<std::vector<FileId>> has,
                                     double erasure = 0.1) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < devices; ++a)
        for (int b = a + 1; b < devices; ++b) edges.emplace_back(a, b);
    return make_network(devices, files, edges, std::move(has), erasure);
}

/// The seven-device fixture consistent with the two-slot walkthrough used in
/// several tests: ids 0..6 stand for U1..U7.
///   slot 1: device 0 sends f0 to {3, 5}, device 2 sends f1 to {6};
///           device 1 is in interference, device 4 out of range.
///   slot 2: device 3 sends f2 to {0, 1, 4}.
inline NetworkState fig1_network(double erasure = 0.1) {
    return make_network(
        7, 3,
        {{0, 1}, {0, 3}, {0, 5}, {1, 2}, {1, 3}, {2, 6}, {3, 4}},
        {{0, 1}, {0, 1}, {0, 1, 2}, {1, 2}, {0, 1}, {1, 2}, {0, 2}}, erasure);
}

}  // namespace idnc::test

#endif  // IDNC_TESTS_HELPERS_HPP_
