#include "starcache/dqn.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcache {

static std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
    std::vector<int> sizes{in};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(out);
    return sizes;
}

DqnAgent::DqnAgent(int state_dim, int num_actions, const DqnConfig& cfg, uint64_t seed)
    : state_dim_(state_dim),
      num_actions_(num_actions),
      cfg_(cfg),
      rng_(seed),
      buffer_(cfg.buffer_capacity) {
    if (num_actions < 1) throw std::invalid_argument("DqnAgent: empty action set");
    qnet = make_mlp(layer_sizes(state_dim, cfg.hidden, num_actions), Mlp::Output::linear,
                    rng_);
    target = qnet;
    opt = make_adam(qnet);
}

int DqnAgent::argmax_action(const std::vector<double>& qvals) const {
    int best = 0;
    for (int a = 1; a < num_actions_; ++a)
        if (qvals[a] > qvals[best]) best = a;
    return best;
}

int DqnAgent::act_train(const std::vector<double>& s) {
    const double u = rng_.uniform();
    if (u < cfg_.epsilon) return static_cast<int>(rng_.uniform_index(num_actions_));
    return argmax_action(mlp_forward(qnet, s));
}

int DqnAgent::act_output(const std::vector<double>& s) const {
    return argmax_action(mlp_forward(qnet, s));
}

void DqnAgent::observe(DqnTransition tr) { buffer_.push(std::move(tr)); }

void DqnAgent::learn() {
    const int batch = cfg_.batch;
    if (buffer_.size() < static_cast<size_t>(batch)) return;
    const auto sampled = buffer_.sample(batch, rng_);

    std::vector<double> s(static_cast<size_t>(batch) * state_dim_);
    std::vector<double> s2(static_cast<size_t>(batch) * state_dim_);
    for (int b = 0; b < batch; ++b) {
        std::copy(sampled[b]->s.begin(), sampled[b]->s.end(), s.begin() + b * state_dim_);
        std::copy(sampled[b]->s2.begin(), sampled[b]->s2.end(),
                  s2.begin() + b * state_dim_);
    }

    std::vector<double> qt(static_cast<size_t>(batch) * num_actions_);
    mlp_forward(target, s2.data(), batch, qt.data(), nullptr);

    MlpCache cache;
    std::vector<double> q(static_cast<size_t>(batch) * num_actions_);
    mlp_forward(qnet, s.data(), batch, q.data(), &cache);

    std::vector<double> dy(static_cast<size_t>(batch) * num_actions_, 0.0);
    for (int b = 0; b < batch; ++b) {
        const DqnTransition& tr = *sampled[b];
        double best = qt[b * num_actions_];
        for (int a = 1; a < num_actions_; ++a)
            best = std::max(best, qt[b * num_actions_ + a]);
        const double y = tr.r + (tr.done ? 0.0 : cfg_.gamma * best);
        dy[b * num_actions_ + tr.a] = 2.0 * (q[b * num_actions_ + tr.a] - y) / batch;
    }
    MlpGrads grads = make_grads(qnet);
    mlp_backward(qnet, cache, dy.data(), grads, nullptr);
    adam_step(qnet, grads, opt, cfg_.lr);
}

void DqnAgent::on_episode_end() {
    ++episodes_;
    if (episodes_ % cfg_.target_copy_episodes == 0) target = qnet;
}

}  // namespace starcache
