#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace idnc;
using idnc::test::complete_network;
using idnc::test::fig1_network;
using idnc::test::make_network;

TEST_CASE("coverage zone on a chain") {
    auto s = make_network(3, 1, {{0, 1}, {1, 2}}, {{0}, {0}, {0}});
    CHECK(coverage_zone(s, 1) == std::vector<DeviceId>{0, 1, 2});
    CHECK(coverage_zone(s, 0) == std::vector<DeviceId>{0, 1});
    CHECK_THROWS_AS(coverage_zone(s, 3), std::out_of_range);
}

TEST_CASE("coverage zone in a complete network") {
    auto s = complete_network(4, 1, {{0}, {0}, {0}, {0}});
    CHECK(coverage_zone(s, 2) == std::vector<DeviceId>{0, 1, 2, 3});
}

TEST_CASE("state construction rejects invalid inputs") {
    // Asymmetric connectivity.
    std::vector<std::vector<bool>> conn = {{true, true}, {false, true}};
    std::vector<std::vector<double>> eras = {{0, .1}, {.1, 0}};
    CHECK_THROWS_AS(NetworkState::create(2, 1, conn, eras, {{0}, {0}}), std::invalid_argument);
    // Disconnected topology.
    conn = {{true, false}, {false, true}};
    CHECK_THROWS_AS(NetworkState::create(2, 1, conn, eras, {{0}, {0}}), std::invalid_argument);
    // Nonzero erasure diagonal.
    conn = {{true, true}, {true, true}};
    eras = {{0.2, .1}, {.1, 0}};
    CHECK_THROWS_AS(NetworkState::create(2, 1, conn, eras, {{0}, {0}}), std::invalid_argument);
    // A file nobody holds.
    eras = {{0, .1}, {.1, 0}};
    CHECK_THROWS_AS(NetworkState::create(2, 2, conn, eras, {{0}, {0}}), std::invalid_argument);
}

TEST_CASE("instant decodability") {
    auto s = make_network(2, 3, {{0, 1}}, {{0, 1, 2}, {1, 2}});
    // Device 1 wants exactly {f0}.
    CHECK(is_instantly_decodable({{0}}, 1, s));
    CHECK(is_instantly_decodable({{0, 1}}, 1, s));  // f1 already held
    CHECK_FALSE(is_instantly_decodable({{1}}, 1, s));

    auto s2 = make_network(2, 2, {{0, 1}}, {{0, 1}, {}});
    // Device 1 wants both files: a two-file XOR is not decodable.
    CHECK_FALSE(is_instantly_decodable({{0, 1}}, 1, s2));
    CHECK(is_instantly_decodable({{0}}, 1, s2));
}

TEST_CASE("apply_reception moves the wanted file") {
    auto s = make_network(2, 3, {{0, 1}}, {{0, 1, 2}, {1}});
    CHECK(s.wants_count(1) == 2);  // wants {0, 2}
    s = apply_reception(s, 1, {{0}});
    CHECK(s.wants(1, 2));
    CHECK(s.has(1, 0));
    CHECK(s.wants_count(1) == 1);
    // XOR with a held file decodes.
    s = apply_reception(s, 1, {{1, 2}});
    CHECK(s.wants_count(1) == 0);
    CHECK_FALSE(s.wanting_mask().any());
    // Not decodable once complete.
    CHECK_THROWS_AS(apply_reception(s, 1, {{0, 1}}), std::logic_error);
}

TEST_CASE("connectivity index") {
    auto full = complete_network(4, 1, {{0}, {0}, {0}, {0}});
    CHECK(connectivity_index(full) == 1.0);
    auto chain = make_network(3, 1, {{0, 1}, {1, 2}}, {{0}, {0}, {0}});
    CHECK(connectivity_index(chain) == Catch::Approx((3 + 4) / 9.0));
}

TEST_CASE("expected erasure averages incoming links over the zone") {
    // Star around device 0 with distinct erasures toward it.
    std::vector<std::vector<bool>> conn(4, std::vector<bool>(4, false));
    for (int i = 0; i < 4; ++i) conn[i][i] = true;
    for (int i = 1; i < 4; ++i) conn[0][i] = conn[i][0] = true;
    std::vector<std::vector<double>> eras(4, std::vector<double>(4, 0.5));
    for (int i = 0; i < 4; ++i) eras[i][i] = 0.0;
    eras[1][0] = 0.1;
    eras[2][0] = 0.2;
    eras[3][0] = 0.3;
    auto s = NetworkState::create(4, 1, conn, eras, {{0}, {0}, {0}, {0}});
    CHECK(expected_erasure(s, 0) == Catch::Approx(0.15));  // 0.6 / 4

    auto pair = make_network(2, 1, {{0, 1}}, {{0}, {0}}, 0.3);
    CHECK(expected_erasure(pair, 0) == Catch::Approx(0.15));  // (0 + 0.3) / 2

    auto five = complete_network(5, 1, {{0}, {0}, {0}, {0}, {0}}, 0.1);
    CHECK(expected_erasure(five, 2) == Catch::Approx(0.08));  // 4 * 0.1 / 5
}

TEST_CASE("hearing sets in the seven-device walkthrough") {
    auto s = fig1_network();
    TransmissionPlan plan;
    plan.entries.push_back({0, {{0}}, {3, 5}, 0.0});
    plan.entries.push_back({2, {{1}}, {6}, 0.0});

    HearingSets h = hearing_sets(s, plan);
    CHECK(h.interference == std::vector<DeviceId>{1});
    CHECK(h.out_of_range == std::vector<DeviceId>{4});
    std::vector<std::pair<DeviceId, int>> expected = {{3, 0}, {5, 0}, {6, 1}};
    CHECK(h.single_hearer == expected);
}

TEST_CASE("hearing sets degenerate plans") {
    auto s = complete_network(3, 2, {{0, 1}, {0}, {1}});
    TransmissionPlan solo;
    solo.entries.push_back({0, {{1}}, {1}, 0.0});
    HearingSets h = hearing_sets(s, solo);
    CHECK(h.interference.empty());
    CHECK(h.out_of_range.empty());
    CHECK(h.single_hearer.size() == 2);

    TransmissionPlan none;
    HearingSets h0 = hearing_sets(s, none);
    CHECK(h0.single_hearer.empty());
    CHECK(h0.out_of_range == std::vector<DeviceId>{1, 2});
}

TEST_CASE("hearing sets partition wanting non-transmitters") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        ExperimentConfig cfg;
        cfg.num_devices = 8;
        cfg.num_files = 4;
        cfg.connectivity = 0.6;
        cfg.mean_erasure = 0.2;
        cfg.seed = rng.raw();
        Rng irng(cfg.seed);
        NetworkState s = make_instance(cfg, irng);
        if (s.all_complete()) continue;

        // Arbitrary plan: up to two holders transmit their lowest file.
        TransmissionPlan plan;
        for (DeviceId u = 0; u < s.num_devices() && plan.entries.size() < 2; ++u)
            if (s.has_mask(u).any()) {
                PlanEntry e;
                e.transmitter = u;
                e.combo.files = {s.has_mask(u).to_vector().front()};
                plan.entries.push_back(e);
            }
        HearingSets h = hearing_sets(s, plan);
        std::vector<int> bucket(s.num_devices(), 0);
        for (DeviceId u : h.interference) ++bucket[u];
        for (DeviceId u : h.out_of_range) ++bucket[u];
        for (auto [u, e] : h.single_hearer) ++bucket[u];
        for (DeviceId u = 0; u < s.num_devices(); ++u) {
            bool is_tx = false;
            for (const auto& e : plan.entries) is_tx = is_tx || e.transmitter == u;
            if (is_tx)
                CHECK(bucket[u] == 0);
            else if (s.wants_mask(u).any())
                CHECK(bucket[u] == 1);
        }
    }
}
