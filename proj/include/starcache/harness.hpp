#pragma once

#include <string>
#include <vector>

#include "starcache/config.hpp"

namespace starcache {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricRow {
    int episode = 0;
    int step = 0;
    double reward = 0.0;
    double wireless_w = 0.0;
    double system_w = 0.0;
    int hits_bs = 0;
    int hits_stars = 0;
    int qos_met = 0;
    Mode mode = Mode::CA;
};

const char* mode_tag(Mode m);

/// Per-step means over the last tenth of the episodes (the convergence window).
struct RunStats {
    double reward = 0.0;
    double wireless_w = 0.0;
    double system_w = 0.0;
    double hit_rate = 0.0;   // served-from-edge fraction of requests
};

RunStats summarize(const std::vector<MetricRow>& rows, int episodes);

/// Stable column order, %.17g doubles, newline-terminated; identical runs
/// produce identical bytes.
void emit_csv(const std::vector<MetricRow>& rows, const std::string& path);

struct TrainOutput {
    std::vector<MetricRow> rows;
    RunStats final_stats;
};

/// Train one run to completion. Empty paths skip the corresponding file.
/// The coupled td3dqn loop trains and records the internal mask decision
/// before the combined action executes in the environment.
TrainOutput train_run(const RunConfig& cfg, uint64_t seed, const std::string& csv_path,
                      const std::string& checkpoint_path);

/// Greedy rollout of a saved policy; no exploration, no learning.
TrainOutput eval_run(const RunConfig& cfg, uint64_t seed,
                     const std::string& checkpoint_path, int episodes,
                     const std::string& csv_path);

enum class SweepAxis { alpha, cache_size };

SweepAxis parse_axis(const std::string& s);

struct SweepRow {
    double value = 0.0;
    int seeds = 0;
    double hit_rate_mean = 0.0, hit_rate_sd = 0.0;
    double system_w_mean = 0.0, system_w_sd = 0.0;
    double reward_mean = 0.0, reward_sd = 0.0;
};

/// Fresh training runs per (value, seed); cache_size sets C_b with C_c at half
/// of it. Reports mean and sd of the final-window statistics across seeds.
std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis,
                            const std::vector<double>& values, int num_seeds,
                            uint64_t seed0);

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace starcache
