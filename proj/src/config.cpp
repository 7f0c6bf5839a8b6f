#include "starcache/config.hpp"

#include <algorithm>
#include <fstream>

namespace starcache {

VariantTag parse_variant(const std::string& s) {
    if (s == "caching-at-stars") return VariantTag::caching_at_stars;
    if (s == "caching-at-ris") return VariantTag::caching_at_ris;
    if (s == "stars-aided") return VariantTag::stars_aided;
    if (s == "ris-aided") return VariantTag::ris_aided;
    if (s == "stars-nocache") return VariantTag::stars_nocache;
    if (s == "ris-nocache") return VariantTag::ris_nocache;
    throw ConfigError("unknown variant: " + s);
}

Algo parse_algo(const std::string& s) {
    if (s == "td3") return Algo::td3;
    if (s == "fatd3") return Algo::fatd3;
    if (s == "td3dqn") return Algo::td3dqn;
    throw ConfigError("unknown algo: " + s);
}

PhaseModel parse_phase(const std::string& s) {
    if (s == "independent") return PhaseModel::independent;
    if (s == "coupled") return PhaseModel::coupled;
    throw ConfigError("unknown phase model: " + s);
}

std::string to_string(VariantTag v) {
    switch (v) {
        case VariantTag::caching_at_stars: return "caching-at-stars";
        case VariantTag::caching_at_ris: return "caching-at-ris";
        case VariantTag::stars_aided: return "stars-aided";
        case VariantTag::ris_aided: return "ris-aided";
        case VariantTag::stars_nocache: return "stars-nocache";
        case VariantTag::ris_nocache: default: return "ris-nocache";
    }
}

std::string to_string(Algo a) {
    switch (a) {
        case Algo::td3: return "td3";
        case Algo::fatd3: return "fatd3";
        case Algo::td3dqn: default: return "td3dqn";
    }
}

std::string to_string(PhaseModel p) {
    return p == PhaseModel::independent ? "independent" : "coupled";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_f64(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

int64_t to_i64(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const int64_t x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + v + "'");
    }
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto f = [&] { return to_f64(key, value); };
    auto i = [&] { return static_cast<int>(to_i64(key, value)); };

    if (key == "F") cfg.env.num_contents = i();
    else if (key == "alpha") cfg.env.zipf_alpha = f();
    else if (key == "C_b") cfg.env.bs_capacity = i();
    else if (key == "C_c") cfg.env.stars_capacity = i();
    else if (key == "M") cfg.env.num_antennas = i();
    else if (key == "N") cfg.env.num_elements = i();
    else if (key == "P_max") cfg.env.bs_power_cap = f();
    else if (key == "Pc_max") cfg.env.controller_power_cap = f();
    else if (key == "B") cfg.env.bandwidth = f();
    else if (key == "noise_w") cfg.env.noise_w = f();
    else if (key == "qos_rate") cfg.env.qos_rate = f();
    else if (key == "chi") cfg.env.static_share = f();
    else if (key == "rho0") cfg.env.fading.rho0 = f();
    else if (key == "pathloss_exp") cfg.env.fading.exponent = f();
    else if (key == "rician_k") cfg.env.fading.rician_k = f();
    else if (key == "push_w") cfg.env.tariff.push_w = f();
    else if (key == "backhaul_w") cfg.env.tariff.backhaul_w = f();
    else if (key == "r_q") cfg.env.reward.qos_reward = f();
    else if (key == "w_p") cfg.env.reward.power_weight = f();
    else if (key == "w_h") cfg.env.reward.hit_weight = f();
    else if (key == "gamma") { cfg.td3.gamma = f(); cfg.dqn.gamma = cfg.td3.gamma; }
    else if (key == "tau") cfg.td3.tau = f();
    else if (key == "policy_delay") cfg.td3.policy_delay = i();
    else if (key == "lr") { cfg.td3.lr = f(); cfg.dqn.lr = cfg.td3.lr; }
    else if (key == "batch") { cfg.td3.batch = i(); cfg.dqn.batch = cfg.td3.batch; }
    else if (key == "td3_buffer") cfg.td3.buffer_capacity = static_cast<size_t>(to_i64(key, value));
    else if (key == "dqn_buffer") cfg.dqn.buffer_capacity = static_cast<size_t>(to_i64(key, value));
    else if (key == "epsilon") cfg.dqn.epsilon = f();
    else if (key == "target_copy") cfg.dqn.target_copy_episodes = i();
    else if (key == "smoothing_std") cfg.td3.smoothing_std = f();
    else if (key == "smoothing_clip") cfg.td3.smoothing_clip = f();
    else if (key == "exploit_candidates") cfg.td3.exploit_candidates = i();
    else if (key == "exploit_after") cfg.td3.exploit_after = f();
    else if (key == "noise_start") cfg.noise.start = f();
    else if (key == "noise_end") cfg.noise.end = f();
    else if (key == "episodes") cfg.episodes = i();
    else if (key == "steps") cfg.steps = i();
    else if (key == "variant") cfg.variant = parse_variant(value);
    else if (key == "algo") cfg.algo = parse_algo(value);
    else if (key == "phase") cfg.env.phase = parse_phase(value);
    else throw ConfigError("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + t + "'");
        apply_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

void finalize_config(RunConfig& cfg) {
    switch (cfg.variant) {
        case VariantTag::caching_at_stars:
            cfg.env.variant = {true, true, false};
            break;
        case VariantTag::caching_at_ris:
            cfg.env.variant = {true, true, true};
            break;
        case VariantTag::stars_aided:
            cfg.env.variant = {true, false, false};
            break;
        case VariantTag::ris_aided:
            cfg.env.variant = {true, false, true};
            break;
        case VariantTag::stars_nocache:
            cfg.env.variant = {false, false, false};
            break;
        case VariantTag::ris_nocache:
            cfg.env.variant = {false, false, true};
            break;
    }
    cfg.env.frequency_aware = cfg.algo != Algo::td3;
    cfg.env.serialized_mask = cfg.env.phase == PhaseModel::coupled &&
                              cfg.algo != Algo::td3dqn && !cfg.env.variant.ris_surface;
    cfg.noise.max_episode = std::max(1, cfg.episodes - 1);

    const EnvConfig& e = cfg.env;
    if (e.num_contents < 2) throw ConfigError("F must be at least 2");
    if (e.stars_capacity < 1 || e.bs_capacity <= e.stars_capacity ||
        e.num_contents <= e.bs_capacity)
        throw ConfigError("capacities must satisfy 1 <= C_c < C_b < F");
    if (e.num_antennas < 1) throw ConfigError("M must be positive");
    if (e.num_elements < 1) throw ConfigError("N must be positive");
    if (e.bs_power_cap <= 0.0 || e.controller_power_cap <= 0.0)
        throw ConfigError("power caps must be positive");
    if (e.bandwidth <= 0.0 || e.noise_w <= 0.0)
        throw ConfigError("bandwidth and noise power must be positive");
    if (e.static_share < 0.0 || e.static_share > 1.0)
        throw ConfigError("chi must lie in [0, 1]");
    if (e.zipf_alpha < 0.0) throw ConfigError("alpha must be nonnegative");
    if (cfg.episodes < 1 || cfg.steps < 1)
        throw ConfigError("episodes and steps must be positive");
    if (cfg.td3.batch < 1 || cfg.td3.policy_delay < 1)
        throw ConfigError("batch and policy_delay must be positive");
    if (cfg.dqn.epsilon < 0.0 || cfg.dqn.epsilon > 1.0)
        throw ConfigError("epsilon must lie in [0, 1]");

    if (cfg.algo == Algo::td3dqn) {
        if (cfg.env.phase != PhaseModel::coupled)
            throw ConfigError("td3dqn drives the coupled phase model only");
        if (cfg.env.variant.ris_surface)
            throw ConfigError("td3dqn needs an energy-splitting surface, not a RIS");
        if (cfg.env.num_elements > 12)
            throw ConfigError(
                "td3dqn keeps one value head per mask, so N > 12 is refused "
                "(2^N heads); run the coupled model at N <= 12");
    }
    if (cfg.env.variant.ris_surface && cfg.env.num_elements % 2 != 0)
        throw ConfigError("RIS variants split the surface in half, so N must be even");
}

}  // namespace starcache
