#include "starcache/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "starcache/kernels.hpp"

namespace starcache {

size_t Mlp::param_count() const {
    size_t n = 0;
    for (int l = 0; l < num_layers(); ++l) n += w[l].size() + b[l].size();
    return n;
}

Mlp make_mlp(const std::vector<int>& sizes, Mlp::Output output, Rng& rng) {
    if (sizes.size() < 2) throw std::invalid_argument("make_mlp: need at least one layer");
    Mlp net;
    net.sizes = sizes;
    net.output = output;
    for (size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l], out = sizes[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(in));
        std::vector<double> wl(static_cast<size_t>(out) * in), bl(out);
        for (double& v : wl) v = (2.0 * rng.uniform() - 1.0) * bound;
        for (double& v : bl) v = (2.0 * rng.uniform() - 1.0) * bound;
        net.w.push_back(std::move(wl));
        net.b.push_back(std::move(bl));
    }
    return net;
}

void mlp_forward(const Mlp& net, const double* x, int batch, double* y,
                 MlpCache* cache) {
    if (batch < 1) throw std::invalid_argument("mlp_forward: empty batch");
    const int layers = net.num_layers();
    std::vector<std::vector<double>> acts, pre;
    acts.emplace_back(x, x + static_cast<size_t>(batch) * net.input_dim());
    for (int l = 0; l < layers; ++l) {
        const int in = net.sizes[l], out = net.sizes[l + 1];
        std::vector<double> z(static_cast<size_t>(batch) * out);
        kernels::linear_forward(acts.back().data(), net.w[l].data(), net.b[l].data(),
                                z.data(), batch, in, out);
        std::vector<double> a(z);
        if (l + 1 < layers) {
            for (double& v : a) v = v > 0.0 ? v : 0.0;
        } else if (net.output == Mlp::Output::tanh) {
            for (double& v : a) v = std::tanh(v);
        }
        pre.push_back(std::move(z));
        acts.push_back(std::move(a));
    }
    const std::vector<double>& out = acts.back();
    for (size_t i = 0; i < out.size(); ++i) y[i] = out[i];
    if (cache != nullptr) {
        cache->batch = batch;
        cache->acts = std::move(acts);
        cache->pre = std::move(pre);
    }
}

std::vector<double> mlp_forward(const Mlp& net, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != net.input_dim())
        throw std::invalid_argument("mlp_forward: input dimension mismatch");
    std::vector<double> y(net.output_dim());
    mlp_forward(net, x.data(), 1, y.data(), nullptr);
    return y;
}

MlpGrads make_grads(const Mlp& net) {
    MlpGrads g;
    for (int l = 0; l < net.num_layers(); ++l) {
        g.dw.emplace_back(net.w[l].size(), 0.0);
        g.db.emplace_back(net.b[l].size(), 0.0);
    }
    return g;
}

void mlp_backward(const Mlp& net, const MlpCache& cache, const double* dy,
                  MlpGrads& grads, double* dx) {
    const int layers = net.num_layers();
    const int batch = cache.batch;
    std::vector<double> delta(dy, dy + static_cast<size_t>(batch) * net.output_dim());
    if (net.output == Mlp::Output::tanh) {
        const std::vector<double>& out = cache.acts.back();
        for (size_t i = 0; i < delta.size(); ++i) delta[i] *= 1.0 - out[i] * out[i];
    }
    for (int l = layers - 1; l >= 0; --l) {
        const int in = net.sizes[l], out = net.sizes[l + 1];
        kernels::linear_backward_params(cache.acts[l].data(), delta.data(),
                                        grads.dw[l].data(), grads.db[l].data(), batch, in,
                                        out);
        if (l == 0 && dx == nullptr) break;
        std::vector<double> din(static_cast<size_t>(batch) * in);
        kernels::linear_backward_input(delta.data(), net.w[l].data(), din.data(), batch,
                                       in, out);
        if (l > 0) {
            const std::vector<double>& z = cache.pre[l - 1];
            for (size_t i = 0; i < din.size(); ++i)
                if (z[i] <= 0.0) din[i] = 0.0;
        }
        delta = std::move(din);
    }
    if (dx != nullptr)
        for (size_t i = 0; i < delta.size(); ++i) dx[i] = delta[i];
}

std::vector<double> flatten_params(const Mlp& net) {
    std::vector<double> flat;
    flat.reserve(net.param_count());
    for (int l = 0; l < net.num_layers(); ++l) {
        flat.insert(flat.end(), net.w[l].begin(), net.w[l].end());
        flat.insert(flat.end(), net.b[l].begin(), net.b[l].end());
    }
    return flat;
}

void load_params(Mlp& net, const std::vector<double>& flat) {
    if (flat.size() != net.param_count())
        throw std::invalid_argument("load_params: size mismatch");
    size_t p = 0;
    for (int l = 0; l < net.num_layers(); ++l) {
        for (double& v : net.w[l]) v = flat[p++];
        for (double& v : net.b[l]) v = flat[p++];
    }
}

std::vector<double> flatten_grads(const MlpGrads& grads) {
    std::vector<double> flat;
    for (size_t l = 0; l < grads.dw.size(); ++l) {
        flat.insert(flat.end(), grads.dw[l].begin(), grads.dw[l].end());
        flat.insert(flat.end(), grads.db[l].begin(), grads.db[l].end());
    }
    return flat;
}

AdamState make_adam(const Mlp& net) {
    AdamState s;
    for (int l = 0; l < net.num_layers(); ++l) {
        s.m_w.emplace_back(net.w[l].size(), 0.0);
        s.v_w.emplace_back(net.w[l].size(), 0.0);
        s.m_b.emplace_back(net.b[l].size(), 0.0);
        s.v_b.emplace_back(net.b[l].size(), 0.0);
    }
    return s;
}

static void adam_axpy(std::vector<double>& p, const std::vector<double>& g,
                      std::vector<double>& m, std::vector<double>& v, double lr,
                      double c1, double c2, double beta1, double beta2, double eps) {
    for (size_t i = 0; i < p.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
}

void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state, double lr) {
    ++state.step;
    const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (int l = 0; l < net.num_layers(); ++l) {
        adam_axpy(net.w[l], grads.dw[l], state.m_w[l], state.v_w[l], lr, c1, c2,
                  state.beta1, state.beta2, state.eps);
        adam_axpy(net.b[l], grads.db[l], state.m_b[l], state.v_b[l], lr, c1, c2,
                  state.beta1, state.beta2, state.eps);
    }
}

void soft_update(Mlp& target, const Mlp& source, double tau) {
    for (int l = 0; l < target.num_layers(); ++l) {
        for (size_t i = 0; i < target.w[l].size(); ++i)
            target.w[l][i] = tau * source.w[l][i] + (1.0 - tau) * target.w[l][i];
        for (size_t i = 0; i < target.b[l].size(); ++i)
            target.b[l][i] = tau * source.b[l][i] + (1.0 - tau) * target.b[l][i];
    }
}

}  // namespace starcache
