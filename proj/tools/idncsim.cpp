// Command-line front end: single-episode traces, figure-style sweeps and the
// verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "idnc/idnc.hpp"
#include "idnc/verify.hpp"

namespace {

const std::map<std::string, idnc::SchedulerKind> kSchedulerNames = {
    {"collision_free", idnc::SchedulerKind::collision_free},
    {"general", idnc::SchedulerKind::general},
    {"pmp", idnc::SchedulerKind::pmp},
    {"single_transmitter", idnc::SchedulerKind::single_transmitter},
};

const std::map<std::string, idnc::SweepParam> kSweepNames = {
    {"connectivity", idnc::SweepParam::connectivity},
    {"devices", idnc::SweepParam::devices},
    {"files", idnc::SweepParam::files},
    {"erasure", idnc::SweepParam::erasure},
};

struct CommonFlags {
    idnc::ExperimentConfig cfg;
    std::string scheduler = "collision_free";
    std::vector<std::string> schedulers;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
};

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--devices,-u", f.cfg.num_devices, "number of devices");
    cmd->add_option("--files,-f", f.cfg.num_files, "number of files");
    cmd->add_option("--connectivity,-c", f.cfg.connectivity, "target connectivity index");
    cmd->add_option("--erasure,-e", f.cfg.mean_erasure, "mean link erasure probability");
    cmd->add_option("--jitter", f.cfg.erasure_jitter, "half-width of the per-link erasure draw");
    cmd->add_option("--pmp-factor", f.cfg.pmp_factor, "base-station erasure = factor * erasure");
    cmd->add_option("--max-cluster-size", f.cfg.max_cluster_size, "cluster size cap");
    cmd->add_option("--cluster-member-pool", f.cfg.cluster_member_pool,
                    "member candidate cap for cluster enumeration (0 = unlimited)");
    cmd->add_option("--iterations,-n", f.cfg.iterations, "episodes per configuration");
    cmd->add_option("--seed,-s", f.cfg.seed, "master seed");
    cmd->add_flag("--complete-overlay", f.cfg.baseline_complete_overlay,
                  "run the single-transmitter baseline on a complete overlay");
    cmd->add_option("--threads,-j", f.threads, "worker threads");
    cmd->set_config("--config", "", "key=value configuration file");
}

int cmd_run(CommonFlags& f) {
    f.cfg.validate();
    auto kind = kSchedulerNames.at(f.scheduler);
    idnc::Rng instance_rng(f.cfg.seed);
    idnc::NetworkState state = idnc::make_instance(f.cfg, instance_rng);

    std::printf("instance: U=%d F=%d C=%.3f (target %.3f) seed=%llu scheduler=%s\n",
                state.num_devices(), state.num_files(), idnc::connectivity_index(state),
                f.cfg.connectivity, static_cast<unsigned long long>(f.cfg.seed),
                idnc::to_string(kind));
    int demand = 0;
    for (idnc::DeviceId u = 0; u < state.num_devices(); ++u) demand += state.wants_count(u);
    std::printf("initial demand: %d file receptions outstanding\n", demand);

    idnc::Rng episode_rng(idnc::derive_seed(f.cfg.seed, 1000 + static_cast<uint64_t>(kind), 0));
    idnc::EpisodeOptions eo;
    eo.keep_round_log = true;
    idnc::EpisodeResult r =
        idnc::run_episode(state, kind, f.cfg.scheduler_options(), episode_rng, eo);

    for (size_t t = 0; t < r.rounds.size(); ++t) {
        const auto& plan = r.rounds[t].plan;
        std::printf("round %3zu:", t + 1);
        for (const auto& e : plan.entries) {
            std::string files, targets;
            for (idnc::FileId x : e.combo.files) files += (files.empty() ? "" : "^") + std::to_string(x);
            for (idnc::DeviceId x : e.targets)
                targets += (targets.empty() ? "" : ",") + std::to_string(x);
            if (e.transmitter)
                std::printf("  d%d->{%s} xor(%s)", *e.transmitter, targets.c_str(), files.c_str());
            else
                std::printf("  bs->{%s} xor(%s)", targets.c_str(), files.c_str());
        }
        std::printf("\n");
    }
    std::printf("completion time: %d rounds\n", r.completion_time);
    std::printf("device  demand  delay  erasures  completed\n");
    for (idnc::DeviceId u = 0; u < state.num_devices(); ++u) {
        const auto& d = r.metrics.device[u];
        std::printf("%6d  %6d  %5d  %8d  %9d\n", u, d.initial_demand, d.decoding_delay,
                    d.erasure_count, d.completion_round.value_or(-1));
    }
    return 0;
}

int cmd_sweep(CommonFlags& f, const std::string& param, std::vector<double>& values,
              const std::string& out_path, const std::string& raw_path) {
    f.cfg.sweep_param = kSweepNames.at(param);
    f.cfg.sweep_values = values;
    f.cfg.schedulers.clear();
    if (f.schedulers.empty()) f.schedulers = {f.scheduler};
    for (const auto& name : f.schedulers) f.cfg.schedulers.push_back(kSchedulerNames.at(name));
    f.cfg.validate();

    auto cells = idnc::run_sweep_cells(f.cfg, f.threads);
    std::string csv = idnc::sweep_csv(f.cfg, cells);
    if (out_path.empty() || out_path == "-") {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << csv;
        std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    }
    if (!raw_path.empty()) {
        std::ofstream raw(raw_path, std::ios::binary);
        raw << idnc::raw_csv(f.cfg, cells);
        std::fprintf(stderr, "wrote %s\n", raw_path.c_str());
    }
    return 0;
}

int cmd_verify(int threads, std::vector<int>& criteria, int iterations) {
    bool all_pass = true;
    auto emit = [&](const idnc::CriterionResult& r) {
        std::printf("criterion %d [%s] %s — %s (%.1fs)\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    };
    idnc::run_acceptance(criteria, threads, iterations, emit);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IDNC dissemination scheduling and simulation"};
    app.require_subcommand(1);
    CommonFlags flags;

    CLI::App* run = app.add_subcommand("run", "run one episode and print its trace");
    add_config_flags(run, flags);
    run->add_option("--scheduler", flags.scheduler, "scheduler kind")
        ->check(CLI::IsMember(kSchedulerNames));

    CLI::App* sweep = app.add_subcommand("sweep", "mean completion time over a parameter sweep");
    add_config_flags(sweep, flags);
    std::string sweep_param = "connectivity";
    std::vector<double> sweep_values;
    std::string out_path, raw_path;
    sweep->add_option("--sweep-param", sweep_param, "swept parameter")
        ->check(CLI::IsMember(kSweepNames));
    sweep->add_option("--sweep-values", sweep_values, "sweep points")->delimiter(',');
    sweep->add_option("--schedulers", flags.schedulers, "scheduler kinds")->delimiter(',');
    sweep->add_option("--out,-o", out_path, "CSV output path ('-' for stdout)");
    sweep->add_option("--raw-out", raw_path, "per-episode raw CSV output path");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<int> criteria;
    int verify_threads = static_cast<int>(std::thread::hardware_concurrency());
    int verify_iterations = 200;
    verify->add_option("--criteria", criteria, "criterion ids (default: all)")->delimiter(',');
    verify->add_option("--threads,-j", verify_threads, "worker threads");
    verify->add_option("--iterations", verify_iterations,
                       "episodes per configuration in the trend criteria");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return cmd_run(flags);
        if (sweep->parsed()) return cmd_sweep(flags, sweep_param, sweep_values, out_path, raw_path);
        if (verify->parsed()) return cmd_verify(verify_threads, criteria, verify_iterations);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
