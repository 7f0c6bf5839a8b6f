#include "starcache/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "starcache/checkpoint.hpp"

namespace starcache {

const char* mode_tag(Mode m) {
    switch (m) {
        case Mode::CT: return "CT";
        case Mode::CA: return "CA";
        case Mode::HM: default: return "HM";
    }
}

RunStats summarize(const std::vector<MetricRow>& rows, int episodes) {
    RunStats st;
    const int window = std::max(1, episodes / 10);
    const int first = episodes - window;
    int n = 0, hits = 0;
    for (const MetricRow& r : rows) {
        if (r.episode < first) continue;
        ++n;
        st.reward += r.reward;
        st.wireless_w += r.wireless_w;
        st.system_w += r.system_w;
        hits += r.hits_bs + r.hits_stars;
    }
    if (n > 0) {
        st.reward /= n;
        st.wireless_w /= n;
        st.system_w /= n;
        st.hit_rate = static_cast<double>(hits) / (2.0 * n);
    }
    return st;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

uint64_t stream_seed(uint64_t run_seed, uint64_t stream) {
    return Rng(run_seed).fork(stream).next_u64();
}

// Stagger the actor's cache-slot biases across the unit interval so the
// initial policy proposes distinct contents per slot.  A zero-initialised
// saturating head starts every slot at the same mid-catalog content, and the
// deterministic policy gradient then moves the slots in lockstep; spreading
// the starting points keeps cache coverage wide while training refines it.
Td3Config staggered_td3(const Td3Config& base, const ActionLayout& lay) {
    Td3Config td3 = base;
    std::vector<double> bias(lay.total(), 0.0);
    const auto spread = [&bias](int off, int n) {
        for (int j = 0; j < n; ++j)
            bias[off + j] = std::atanh(2.0 * (j + 0.5) / n - 1.0);
    };
    spread(lay.off_cache_bs(), lay.cache_bs);
    spread(lay.off_cache_stars(), lay.cache_stars);
    td3.actor_head_bias = std::move(bias);
    return td3;
}

struct RunParts {
    CachingEnv env;
    Td3Agent td3;
    std::unique_ptr<DqnAgent> dqn;   // null unless the algo needs it

    RunParts(const RunConfig& cfg, uint64_t seed, bool with_dqn)
        : env(cfg.env, stream_seed(seed, 0)),
          td3(env.state_dim(), env.action_dim(), staggered_td3(cfg.td3, env.layout()),
              cfg.noise, stream_seed(seed, 1)) {
        if (with_dqn)
            dqn = std::make_unique<DqnAgent>(env.internal_state_dim(),
                                             static_cast<int>(env.mask_actions()),
                                             cfg.dqn, stream_seed(seed, 2));
    }
};

MetricRow make_row(int episode, int step, const StepResult& sr) {
    MetricRow row;
    row.episode = episode;
    row.step = step;
    row.reward = sr.reward;
    row.wireless_w = sr.budget.wireless_w;
    row.system_w = sr.budget.system_w;
    row.hits_bs = sr.hits_bs;
    row.hits_stars = sr.hits_stars;
    row.qos_met = sr.qos_met;
    row.mode = sr.budget.mode;
    return row;
}

}  // namespace

void emit_csv(const std::vector<MetricRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open CSV for writing: " + path);
    out << "episode,step,reward,wireless_w,system_w,hits_bs,hits_stars,qos_met,mode\n";
    for (const MetricRow& r : rows) {
        out << r.episode << ',' << r.step << ',' << fmt_double(r.reward) << ','
            << fmt_double(r.wireless_w) << ',' << fmt_double(r.system_w) << ','
            << r.hits_bs << ',' << r.hits_stars << ',' << r.qos_met << ','
            << mode_tag(r.mode) << '\n';
    }
    if (!out) throw IoError("short write on CSV: " + path);
}

TrainOutput train_run(const RunConfig& cfg, uint64_t seed, const std::string& csv_path,
                      const std::string& checkpoint_path) {
    const bool coupled_pair = cfg.algo == Algo::td3dqn;
    RunParts parts(cfg, seed, coupled_pair);
    CachingEnv& env = parts.env;
    Td3Agent& td3 = parts.td3;

    TrainOutput out;
    out.rows.reserve(static_cast<size_t>(cfg.episodes) * cfg.steps);
    const int64_t total_steps = static_cast<int64_t>(cfg.episodes) * cfg.steps;
    int64_t global_step = 0;

    for (int e = 0; e < cfg.episodes; ++e) {
        std::vector<double> s = env.reset();
        for (int t = 0; t < cfg.steps; ++t) {
            ++global_step;
            std::vector<double> a = td3.act(s, e, global_step, total_steps);
            StepResult sr;
            if (coupled_pair) {
                // The inner mask decision is observed, stored and trained
                // before the combined action touches the environment.
                const std::vector<double> s_in = env.internal_state(a);
                const int a_d = parts.dqn->act_train(s_in);
                const CouplingMask mask =
                    CouplingMask::from_index(static_cast<uint64_t>(a_d),
                                             cfg.env.num_elements);
                const EvalResult ev = env.evaluate(a, &mask);
                parts.dqn->observe({s_in, s_in, a_d, ev.internal_reward, 1});
                parts.dqn->learn();
                sr = env.step_with_mask(a, mask);
            } else {
                sr = env.step(a);
            }
            td3.observe({s, a, sr.state, sr.reward, 0});
            td3.learn();
            out.rows.push_back(make_row(e, t, sr));
            s = std::move(sr.state);
        }
        if (coupled_pair) parts.dqn->on_episode_end();
    }

    out.final_stats = summarize(out.rows, cfg.episodes);
    if (!csv_path.empty()) emit_csv(out.rows, csv_path);
    if (!checkpoint_path.empty())
        save_checkpoint(checkpoint_path, td3, parts.dqn.get(), env.frequency_table(),
                        cfg.episodes);
    return out;
}

TrainOutput eval_run(const RunConfig& cfg, uint64_t seed,
                     const std::string& checkpoint_path, int episodes,
                     const std::string& csv_path) {
    const bool coupled_pair = cfg.algo == Algo::td3dqn;
    RunParts parts(cfg, seed, coupled_pair);
    CachingEnv& env = parts.env;
    load_checkpoint(checkpoint_path, parts.td3, parts.dqn.get(), env.frequency_table());

    TrainOutput out;
    out.rows.reserve(static_cast<size_t>(episodes) * cfg.steps);
    for (int e = 0; e < episodes; ++e) {
        std::vector<double> s = env.reset();
        for (int t = 0; t < cfg.steps; ++t) {
            const std::vector<double> a = parts.td3.act_greedy(s);
            StepResult sr;
            if (coupled_pair) {
                const std::vector<double> s_in = env.internal_state(a);
                const int a_d = parts.dqn->act_output(s_in);
                sr = env.step_with_mask(
                    a, CouplingMask::from_index(static_cast<uint64_t>(a_d),
                                                cfg.env.num_elements));
            } else {
                sr = env.step(a);
            }
            out.rows.push_back(make_row(e, t, sr));
            s = std::move(sr.state);
        }
    }
    out.final_stats = summarize(out.rows, episodes);
    if (!csv_path.empty()) emit_csv(out.rows, csv_path);
    return out;
}

SweepAxis parse_axis(const std::string& s) {
    if (s == "alpha") return SweepAxis::alpha;
    if (s == "cache_size") return SweepAxis::cache_size;
    throw ConfigError("unknown sweep axis: " + s);
}

std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis,
                            const std::vector<double>& values, int num_seeds,
                            uint64_t seed0) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (num_seeds < 1) throw ConfigError("sweep needs at least one seed");
    std::vector<SweepRow> rows;
    for (double v : values) {
        RunConfig cfg = base;
        if (axis == SweepAxis::alpha) {
            cfg.env.zipf_alpha = v;
        } else {
            cfg.env.bs_capacity = static_cast<int>(v);
            cfg.env.stars_capacity = std::max(1, static_cast<int>(v) / 2);
        }
        finalize_config(cfg);

        std::vector<double> hit, power, reward;
        for (int k = 0; k < num_seeds; ++k) {
            const TrainOutput res = train_run(cfg, seed0 + k, "", "");
            hit.push_back(res.final_stats.hit_rate);
            power.push_back(res.final_stats.system_w);
            reward.push_back(res.final_stats.reward);
        }
        auto mean_sd = [](const std::vector<double>& xs) {
            double m = 0.0;
            for (double x : xs) m += x;
            m /= xs.size();
            double var = 0.0;
            for (double x : xs) var += (x - m) * (x - m);
            const double sd = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1)) : 0.0;
            return std::pair<double, double>{m, sd};
        };
        SweepRow row;
        row.value = v;
        row.seeds = num_seeds;
        std::tie(row.hit_rate_mean, row.hit_rate_sd) = mean_sd(hit);
        std::tie(row.system_w_mean, row.system_w_sd) = mean_sd(power);
        std::tie(row.reward_mean, row.reward_sd) = mean_sd(reward);
        rows.push_back(row);
    }
    return rows;
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open CSV for writing: " + path);
    out << "value,seeds,hit_rate_mean,hit_rate_sd,system_w_mean,system_w_sd,"
           "reward_mean,reward_sd\n";
    for (const SweepRow& r : rows) {
        out << fmt_double(r.value) << ',' << r.seeds << ',' << fmt_double(r.hit_rate_mean)
            << ',' << fmt_double(r.hit_rate_sd) << ',' << fmt_double(r.system_w_mean)
            << ',' << fmt_double(r.system_w_sd) << ',' << fmt_double(r.reward_mean) << ','
            << fmt_double(r.reward_sd) << '\n';
    }
    if (!out) throw IoError("short write on CSV: " + path);
}

}  // namespace starcache
