#pragma once

#include <cstdint>
#include <vector>

#include "starcache/mlp.hpp"
#include "starcache/replay.hpp"
#include "starcache/rng.hpp"

namespace starcache {

/// Exploration noise scale, linear in the episode index from start to end.
struct NoiseSchedule {
    double start = 0.4;
    double end = 0.2;
    int max_episode = 1;

    double scale(int episode) const;
};

struct Td3Config {
    double gamma = 0.99;
    double tau = 0.005;
    int policy_delay = 3;
    double lr = 3e-4;
    int batch = 64;
    size_t buffer_capacity = 100000;
    double smoothing_std = 0.2;   // target policy smoothing noise
    double smoothing_clip = 0.5;
    /// Late-phase action selection screens this many noisy candidates through
    /// the larger twin-critic value and keeps the best.
    int exploit_candidates = 8;
    double exploit_after = 0.8;   // t_o as a fraction of the whole run
    std::vector<int> hidden = {64, 64, 64};
    /// Optional per-dimension bias for the actor head, applied at construction.
    /// Lets the caller stagger initial proposals instead of starting every
    /// saturating output at zero; empty means plain zero biases.
    std::vector<double> actor_head_bias;
};

struct Td3Transition {
    std::vector<double> s, a, s2;
    double r = 0.0;
    uint8_t done = 0;
};

/// Twin-critic deterministic policy gradient agent over a [-1, 1]^d action box.
class Td3Agent {
  public:
    Td3Agent(int state_dim, int action_dim, const Td3Config& cfg,
             const NoiseSchedule& noise, uint64_t seed);

    /// Two-phase behaviour policy: additive Gaussian exploration up to the
    /// threshold step, then critic-screened candidate selection.
    std::vector<double> act(const std::vector<double>& s, int episode,
                            int64_t global_step, int64_t total_steps);
    std::vector<double> act_greedy(const std::vector<double>& s) const;

    void observe(Td3Transition tr);

    /// One gradient step; a no-op until the buffer holds a full batch. The
    /// actor and the targets move every policy_delay calls.
    void learn();

    const Td3Config& config() const { return cfg_; }
    const NoiseSchedule& noise() const { return noise_; }
    int state_dim() const { return state_dim_; }
    int action_dim() const { return action_dim_; }
    int64_t learn_steps() const { return learn_steps_; }
    const ReplayBuffer<Td3Transition>& buffer() const { return buffer_; }

    // exposed for the checkpoint code
    Mlp actor, critic1, critic2, target_actor, target_critic1, target_critic2;
    AdamState opt_actor, opt_critic1, opt_critic2;
    int64_t learn_steps_ = 0;

  private:
    double critic_value(const Mlp& critic, const std::vector<double>& s,
                        const std::vector<double>& a) const;

    int state_dim_, action_dim_;
    Td3Config cfg_;
    NoiseSchedule noise_;
    Rng rng_;
    ReplayBuffer<Td3Transition> buffer_;
};

}  // namespace starcache
