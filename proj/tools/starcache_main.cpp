#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starcache/harness.hpp"

namespace {

using namespace starcache;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    uint64_t seed = 1;
    std::string variant, phase, algo;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "flat key=value config file");
    cmd->add_option("--seed", o.seed, "run seed");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--variant", o.variant,
                    "caching-at-stars | caching-at-ris | stars-aided | ris-aided | "
                    "stars-nocache | ris-nocache");
    cmd->add_option("--phase", o.phase, "independent | coupled");
    cmd->add_option("--algo", o.algo, "td3 | fatd3 | td3dqn");
}

RunConfig build_config(const CommonOpts& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (!o.variant.empty()) cfg.variant = parse_variant(o.variant);
    if (!o.phase.empty()) cfg.env.phase = parse_phase(o.phase);
    if (!o.algo.empty()) cfg.algo = parse_algo(o.algo);
    finalize_config(cfg);
    return cfg;
}

std::string prep_out(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return dir;
}

void print_stats(const RunConfig& cfg, const RunStats& st) {
    std::printf("variant=%s algo=%s phase=%s\n", to_string(cfg.variant).c_str(),
                to_string(cfg.algo).c_str(), to_string(cfg.env.phase).c_str());
    std::printf("final window: reward=%.6g wireless_w=%.6g system_w=%.6g hit_rate=%.4f\n",
                st.reward, st.wireless_w, st.system_w, st.hit_rate);
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= csv.size()) {
        const size_t comma = csv.find(',', pos);
        const std::string item =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) vals.push_back(std::stod(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return vals;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seedable caching/beamforming downlink trainer"};
    app.require_subcommand(1);

    CommonOpts train_o, base_o, sweep_o, eval_o;
    std::string axis = "alpha", values = "0.4,0.8,1.2", checkpoint;
    int sweep_seeds = 5, eval_episodes = 10;

    CLI::App* train = app.add_subcommand("train", "train one run, write CSV + checkpoint");
    add_common(train, train_o);

    CLI::App* baseline =
        app.add_subcommand("baseline", "train a comparison variant (requires --variant)");
    add_common(baseline, base_o);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "train across an axis, aggregate over seeds");
    add_common(sweep_cmd, sweep_o);
    sweep_cmd->add_option("--axis", axis, "alpha | cache_size");
    sweep_cmd->add_option("--values", values, "comma-separated axis values");
    sweep_cmd->add_option("--seeds", sweep_seeds, "seeds per value");

    CLI::App* eval_cmd = app.add_subcommand("eval", "greedy rollout of a checkpoint");
    add_common(eval_cmd, eval_o);
    eval_cmd->add_option("--checkpoint", checkpoint, "checkpoint file to load")
        ->required();
    eval_cmd->add_option("--episodes", eval_episodes, "evaluation episodes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            const RunConfig cfg = build_config(train_o);
            const std::string dir = prep_out(train_o.out_dir);
            const TrainOutput res = train_run(cfg, train_o.seed, dir + "/metrics.csv",
                                              dir + "/checkpoint.bin");
            print_stats(cfg, res.final_stats);
            std::printf("wrote %s/metrics.csv and %s/checkpoint.bin\n", dir.c_str(),
                        dir.c_str());
        } else if (baseline->parsed()) {
            if (base_o.variant.empty())
                throw ConfigError("baseline requires --variant");
            const RunConfig cfg = build_config(base_o);
            const std::string dir = prep_out(base_o.out_dir);
            const TrainOutput res = train_run(cfg, base_o.seed, dir + "/metrics.csv",
                                              dir + "/checkpoint.bin");
            print_stats(cfg, res.final_stats);
        } else if (sweep_cmd->parsed()) {
            const RunConfig cfg = build_config(sweep_o);
            const std::string dir = prep_out(sweep_o.out_dir);
            const auto rows =
                sweep(cfg, parse_axis(axis), parse_values(values), sweep_seeds,
                      sweep_o.seed);
            emit_sweep_csv(rows, dir + "/sweep.csv");
            std::printf("wrote %s/sweep.csv (%zu rows)\n", dir.c_str(), rows.size());
        } else if (eval_cmd->parsed()) {
            const RunConfig cfg = build_config(eval_o);
            const std::string dir = prep_out(eval_o.out_dir);
            const TrainOutput res = eval_run(cfg, eval_o.seed, checkpoint, eval_episodes,
                                             dir + "/metrics_eval.csv");
            print_stats(cfg, res.final_stats);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
