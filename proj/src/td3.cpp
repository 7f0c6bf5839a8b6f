#include "starcache/td3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starcache {

double NoiseSchedule::scale(int episode) const {
    if (max_episode <= 0) return end;
    const double t = std::clamp(static_cast<double>(episode) / max_episode, 0.0, 1.0);
    return start + (end - start) * t;
}

static std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
    std::vector<int> sizes{in};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(out);
    return sizes;
}

Td3Agent::Td3Agent(int state_dim, int action_dim, const Td3Config& cfg,
                   const NoiseSchedule& noise, uint64_t seed)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      cfg_(cfg),
      noise_(noise),
      rng_(seed),
      buffer_(cfg.buffer_capacity) {
    actor = make_mlp(layer_sizes(state_dim, cfg.hidden, action_dim), Mlp::Output::tanh,
                     rng_);
    if (!cfg.actor_head_bias.empty()) {
        if (cfg.actor_head_bias.size() != static_cast<size_t>(action_dim))
            throw std::invalid_argument("actor head bias length != action dim");
        actor.b.back() = cfg.actor_head_bias;
    }
    critic1 = make_mlp(layer_sizes(state_dim + action_dim, cfg.hidden, 1),
                       Mlp::Output::linear, rng_);
    critic2 = make_mlp(layer_sizes(state_dim + action_dim, cfg.hidden, 1),
                       Mlp::Output::linear, rng_);
    target_actor = actor;
    target_critic1 = critic1;
    target_critic2 = critic2;
    opt_actor = make_adam(actor);
    opt_critic1 = make_adam(critic1);
    opt_critic2 = make_adam(critic2);
}

double Td3Agent::critic_value(const Mlp& critic, const std::vector<double>& s,
                              const std::vector<double>& a) const {
    std::vector<double> in;
    in.reserve(s.size() + a.size());
    in.insert(in.end(), s.begin(), s.end());
    in.insert(in.end(), a.begin(), a.end());
    return mlp_forward(critic, in)[0];
}

std::vector<double> Td3Agent::act(const std::vector<double>& s, int episode,
                                  int64_t global_step, int64_t total_steps) {
    const double xi = noise_.scale(episode);
    std::vector<double> mean = mlp_forward(actor, s);
    const int64_t threshold =
        static_cast<int64_t>(cfg_.exploit_after * static_cast<double>(total_steps));
    if (global_step <= threshold) {
        for (double& v : mean) v = std::clamp(v + xi * rng_.normal(), -1.0, 1.0);
        return mean;
    }
    // Late phase: keep the noiseless action unless a perturbed candidate looks
    // better to the stronger critic.
    std::vector<double> best = mean;
    double best_q = std::max(critic_value(critic1, s, mean), critic_value(critic2, s, mean));
    for (int c = 1; c < cfg_.exploit_candidates; ++c) {
        std::vector<double> cand(mean.size());
        for (size_t i = 0; i < mean.size(); ++i)
            cand[i] = std::clamp(mean[i] + xi * rng_.normal(), -1.0, 1.0);
        const double q =
            std::max(critic_value(critic1, s, cand), critic_value(critic2, s, cand));
        if (q > best_q) {
            best_q = q;
            best = std::move(cand);
        }
    }
    return best;
}

std::vector<double> Td3Agent::act_greedy(const std::vector<double>& s) const {
    return mlp_forward(actor, s);
}

void Td3Agent::observe(Td3Transition tr) { buffer_.push(std::move(tr)); }

void Td3Agent::learn() {
    const int batch = cfg_.batch;
    if (buffer_.size() < static_cast<size_t>(batch)) return;
    const auto sampled = buffer_.sample(batch, rng_);

    std::vector<double> s(static_cast<size_t>(batch) * state_dim_);
    std::vector<double> s2(static_cast<size_t>(batch) * state_dim_);
    std::vector<double> sa(static_cast<size_t>(batch) * (state_dim_ + action_dim_));
    for (int b = 0; b < batch; ++b) {
        const Td3Transition& tr = *sampled[b];
        std::copy(tr.s.begin(), tr.s.end(), s.begin() + b * state_dim_);
        std::copy(tr.s2.begin(), tr.s2.end(), s2.begin() + b * state_dim_);
        std::copy(tr.s.begin(), tr.s.end(),
                  sa.begin() + b * (state_dim_ + action_dim_));
        std::copy(tr.a.begin(), tr.a.end(),
                  sa.begin() + b * (state_dim_ + action_dim_) + state_dim_);
    }

    // Smoothed target action, then the smaller twin target value.
    std::vector<double> a2(static_cast<size_t>(batch) * action_dim_);
    mlp_forward(target_actor, s2.data(), batch, a2.data(), nullptr);
    for (double& v : a2) {
        const double eps = std::clamp(rng_.normal() * cfg_.smoothing_std,
                                      -cfg_.smoothing_clip, cfg_.smoothing_clip);
        v = std::clamp(v + eps, -1.0, 1.0);
    }
    std::vector<double> s2a2(static_cast<size_t>(batch) * (state_dim_ + action_dim_));
    for (int b = 0; b < batch; ++b) {
        std::copy(s2.begin() + b * state_dim_, s2.begin() + (b + 1) * state_dim_,
                  s2a2.begin() + b * (state_dim_ + action_dim_));
        std::copy(a2.begin() + b * action_dim_, a2.begin() + (b + 1) * action_dim_,
                  s2a2.begin() + b * (state_dim_ + action_dim_) + state_dim_);
    }
    std::vector<double> q1t(batch), q2t(batch);
    mlp_forward(target_critic1, s2a2.data(), batch, q1t.data(), nullptr);
    mlp_forward(target_critic2, s2a2.data(), batch, q2t.data(), nullptr);

    std::vector<double> y(batch);
    for (int b = 0; b < batch; ++b) {
        const Td3Transition& tr = *sampled[b];
        const double boot = tr.done ? 0.0 : cfg_.gamma * std::min(q1t[b], q2t[b]);
        y[b] = tr.r + boot;
    }

    // Both critics regress onto y.
    for (Mlp* critic : {&critic1, &critic2}) {
        MlpCache cache;
        std::vector<double> q(batch);
        mlp_forward(*critic, sa.data(), batch, q.data(), &cache);
        std::vector<double> dy(batch);
        for (int b = 0; b < batch; ++b) dy[b] = 2.0 * (q[b] - y[b]) / batch;
        MlpGrads grads = make_grads(*critic);
        mlp_backward(*critic, cache, dy.data(), grads, nullptr);
        adam_step(*critic, grads, critic == &critic1 ? opt_critic1 : opt_critic2,
                  cfg_.lr);
    }

    ++learn_steps_;
    if (learn_steps_ % cfg_.policy_delay != 0) return;

    // Deterministic policy gradient through critic 1: maximize its value of
    // the actor's action, so descend on its negation.
    MlpCache actor_cache;
    std::vector<double> a_pred(static_cast<size_t>(batch) * action_dim_);
    mlp_forward(actor, s.data(), batch, a_pred.data(), &actor_cache);
    std::vector<double> sap(static_cast<size_t>(batch) * (state_dim_ + action_dim_));
    for (int b = 0; b < batch; ++b) {
        std::copy(s.begin() + b * state_dim_, s.begin() + (b + 1) * state_dim_,
                  sap.begin() + b * (state_dim_ + action_dim_));
        std::copy(a_pred.begin() + b * action_dim_, a_pred.begin() + (b + 1) * action_dim_,
                  sap.begin() + b * (state_dim_ + action_dim_) + state_dim_);
    }
    MlpCache critic_cache;
    std::vector<double> q(batch);
    mlp_forward(critic1, sap.data(), batch, q.data(), &critic_cache);
    std::vector<double> dq(batch, -1.0 / batch);
    MlpGrads scratch = make_grads(critic1);
    std::vector<double> dsa(static_cast<size_t>(batch) * (state_dim_ + action_dim_));
    mlp_backward(critic1, critic_cache, dq.data(), scratch, dsa.data());
    std::vector<double> da(static_cast<size_t>(batch) * action_dim_);
    for (int b = 0; b < batch; ++b)
        std::copy(dsa.begin() + b * (state_dim_ + action_dim_) + state_dim_,
                  dsa.begin() + (b + 1) * (state_dim_ + action_dim_),
                  da.begin() + b * action_dim_);
    MlpGrads actor_grads = make_grads(actor);
    mlp_backward(actor, actor_cache, da.data(), actor_grads, nullptr);
    adam_step(actor, actor_grads, opt_actor, cfg_.lr);

    soft_update(target_actor, actor, cfg_.tau);
    soft_update(target_critic1, critic1, cfg_.tau);
    soft_update(target_critic2, critic2, cfg_.tau);
}

}  // namespace starcache
