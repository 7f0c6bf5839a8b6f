#pragma once

#include <cstdint>
#include <vector>

#include "starcache/mlp.hpp"
#include "starcache/replay.hpp"
#include "starcache/rng.hpp"

namespace starcache {

struct DqnConfig {
    double gamma = 0.99;
    double lr = 3e-4;
    int batch = 64;
    size_t buffer_capacity = 10000;
    double epsilon = 0.15;        // training-time exploration
    int target_copy_episodes = 2;  // hard target refresh period
    std::vector<int> hidden = {64, 64, 64};
};

struct DqnTransition {
    std::vector<double> s, s2;
    int a = 0;
    double r = 0.0;
    uint8_t done = 0;
};

/// Value network over a small discrete action set (one output head per
/// action); here the actions are transmission-phase mask indices.
class DqnAgent {
  public:
    DqnAgent(int state_dim, int num_actions, const DqnConfig& cfg, uint64_t seed);

    int act_train(const std::vector<double>& s);        // epsilon-greedy
    int act_output(const std::vector<double>& s) const; // pure argmax

    void observe(DqnTransition tr);
    void learn();            // no-op until the buffer holds a batch
    void on_episode_end();   // counts episodes, refreshes the target

    const DqnConfig& config() const { return cfg_; }
    int state_dim() const { return state_dim_; }
    int num_actions() const { return num_actions_; }
    int64_t episodes() const { return episodes_; }
    const ReplayBuffer<DqnTransition>& buffer() const { return buffer_; }

    // exposed for the checkpoint code
    Mlp qnet, target;
    AdamState opt;
    int64_t episodes_ = 0;

  private:
    int argmax_action(const std::vector<double>& qvals) const;

    int state_dim_, num_actions_;
    DqnConfig cfg_;
    Rng rng_;
    ReplayBuffer<DqnTransition> buffer_;
};

}  // namespace starcache
