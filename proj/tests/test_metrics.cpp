#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "idnc/verify.hpp"

using namespace idnc;
using idnc::test::complete_network;
using idnc::test::fig1_network;
using idnc::test::make_network;

namespace {

EpisodeMetrics metrics_with(const NetworkState& s, std::vector<int> demand,
                            std::vector<int> delay) {
    EpisodeMetrics m = EpisodeMetrics::start(s);
    for (DeviceId u = 0; u < s.num_devices(); ++u) {
        m.device[u].initial_demand = demand[u];
        m.device[u].decoding_delay = delay[u];
    }
    return m;
}

}  // namespace

TEST_CASE("record_round walkthrough accounting") {
    auto s = fig1_network();
    EpisodeMetrics m = EpisodeMetrics::start(s);
    TransmissionPlan plan;
    plan.entries.push_back({0, {{0}}, {3, 5}, 0.0});
    plan.entries.push_back({2, {{1}}, {6}, 0.0});

    std::vector<ReceptionOutcome> delivered = {{3, 0, false}, {5, 0, false}, {6, 1, false}};
    EpisodeMetrics m1 = record_round(m, s, plan, delivered);
    CHECK(m1.device[0].decoding_delay == 1);  // wanting transmitter
    CHECK(m1.device[1].decoding_delay == 1);  // interference
    CHECK(m1.device[4].decoding_delay == 1);  // out of range
    CHECK(m1.device[2].decoding_delay == 0);  // empty wants
    CHECK(m1.device[3].decoding_delay == 0);  // instantly decodable reception
    CHECK(m1.device[3].erasure_count == 0);

    // Erased single transmission counts toward the erasure tally only.
    std::vector<ReceptionOutcome> erased = {{3, 0, true}, {5, 0, false}, {6, 1, false}};
    EpisodeMetrics m2 = record_round(m, s, plan, erased);
    CHECK(m2.device[3].erasure_count == 1);
    CHECK(m2.device[3].decoding_delay == 0);

    // Missing outcome for a singleton-hearer violates the contract.
    CHECK_THROWS_AS(record_round(m, s, plan, {}), std::logic_error);
}

TEST_CASE("record_round counts delivered non-decodable combinations as delay") {
    auto s = make_network(2, 3, {{0, 1}}, {{0, 1, 2}, {0, 1}});
    // Device 1 wants f2; a delivered f0 is useless.
    TransmissionPlan plan;
    plan.entries.push_back({0, {{0}}, {}, 0.0});
    EpisodeMetrics m = record_round(EpisodeMetrics::start(s), s, plan, {{1, 0, false}});
    CHECK(m.device[1].decoding_delay == 1);
    CHECK(m.device[1].erasure_count == 0);
}

TEST_CASE("record_round touches at most one counter per wanting device") {
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        ExperimentConfig cfg;
        cfg.num_devices = 7;
        cfg.num_files = 4;
        cfg.connectivity = 0.7;
        cfg.mean_erasure = 0.25;
        cfg.seed = rng.raw();
        Rng irng(cfg.seed);
        NetworkState s = make_instance(cfg, irng);
        if (s.all_complete()) continue;
        EpisodeMetrics before = EpisodeMetrics::start(s);
        RoundContext ctx = make_round_context(s, before);
        TransmissionPlan plan = make_plan(s, ctx, SchedulerKind::collision_free, {});
        HearingSets h = hearing_sets(s, plan);
        std::vector<ReceptionOutcome> outcomes;
        for (auto [u, e] : h.single_hearer) outcomes.push_back({u, e, rng.bernoulli(0.5)});
        EpisodeMetrics after = record_round(before, s, plan, outcomes);
        for (DeviceId u = 0; u < s.num_devices(); ++u) {
            int diff = after.device[u].decoding_delay - before.device[u].decoding_delay +
                       after.device[u].erasure_count - before.device[u].erasure_count;
            if (s.wants_mask(u).any())
                CHECK((diff == 0 || diff == 1));
            else
                CHECK(diff == 0);
        }
    }
}

TEST_CASE("anticipated completion") {
    auto s = complete_network(2, 8, {{0, 1, 2, 3, 4, 5, 6, 7}, {5, 6, 7}});
    EpisodeMetrics m = metrics_with(s, {0, 5}, {0, 0});
    CHECK(anticipated_completion(m, 1, 0.0) == Catch::Approx(5.0));
    m.device[1].decoding_delay = 2;
    CHECK(anticipated_completion(m, 1, 0.0) == Catch::Approx(7.0));
    CHECK(anticipated_completion(m, 1, 0.08) == Catch::Approx(7.521739130434783));
    CHECK_THROWS_AS(anticipated_completion(m, 1, 1.0), std::invalid_argument);
}

TEST_CASE("critical set") {
    // Demands 5 and 1 with identical expected erasures: 1 + step < 5-ish, so
    // only the heavy device is critical.
    auto s2 = complete_network(3, 8,
                               {{5, 6, 7}, {0, 1, 2, 3, 4, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7}}, 0.1);
    EpisodeMetrics m = EpisodeMetrics::start(s2);
    auto crit = critical_set(m, s2);
    CHECK(crit == std::vector<DeviceId>{0});

    // All wanting devices identical: everyone is critical.
    auto s3 = complete_network(3, 4, {{0, 1}, {0, 1}, {0, 1, 2, 3}}, 0.1);
    CHECK(critical_set(EpisodeMetrics::start(s3), s3) == std::vector<DeviceId>{0, 1});

    // No wanting devices: empty critical set.
    auto s4 = complete_network(2, 2, {{0, 1}, {0, 1}}, 0.1);
    CHECK(critical_set(EpisodeMetrics::start(s4), s4).empty());
}

TEST_CASE("critical set contains every maximum achiever") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        TestInstance inst = random_tiny_instance(rng, 5, 3);
        RoundContext ctx = make_round_context(inst.state, inst.metrics);
        double best = -1;
        DeviceId arg = -1;
        for (DeviceId u = 0; u < inst.state.num_devices(); ++u)
            if (ctx.wanting.test(u) && ctx.anticipated[u] > best) {
                best = ctx.anticipated[u];
                arg = u;
            }
        REQUIRE(arg >= 0);
        CHECK(ctx.is_critical(arg));
    }
}

TEST_CASE("layer index") {
    SECTION("maximum achiever sits in layer 1") {
        CHECK(layer_core(10.0, 0.1, 10.0) == 1);
    }
    SECTION("gap of exactly 2.5 steps lands in layer 3") {
        double eps = 0.2;
        double gap = 2.5 / (1.0 - eps);
        CHECK(layer_core(10.0 - gap, eps, 10.0) == 3);
    }
    SECTION("demands 5 and 1 at zero erasure: small device in layer 5") {
        CHECK(layer_core(1.0, 0.0, 5.0) == 5);
    }
    SECTION("monotone: larger anticipated completion means smaller layer") {
        for (double a = 0.0; a < 9.9; a += 0.37)
            CHECK(layer_core(a + 0.1, 0.15, 10.0) <= layer_core(a, 0.15, 10.0));
    }
    SECTION("boundary devices are layer 1, matching the critical rule") {
        double eps = 0.25;
        double a = 10.0 - 1.0 / (1.0 - eps);
        CHECK(layer_core(a, eps, 10.0) == 1);
    }
}

TEST_CASE("layer_index free function agrees with the context") {
    Rng rng(5);
    TestInstance inst = random_tiny_instance(rng, 5, 3);
    RoundContext ctx = make_round_context(inst.state, inst.metrics);
    for (DeviceId u = 0; u < inst.state.num_devices(); ++u)
        if (ctx.wanting.test(u))
            CHECK(layer_index(inst.metrics, u, ctx.eps[u], ctx.global_max) == ctx.layer(u));
}
