#pragma once

#include <cstdint>
#include <vector>

#include "starcache/rng.hpp"

namespace starcache {

/// Fully connected network with rectifier hidden layers and a linear or tanh
/// output head. All math is 64-bit.
struct Mlp {
    enum class Output { linear, tanh };

    std::vector<int> sizes;              // {in, hidden..., out}
    Output output = Output::linear;
    std::vector<std::vector<double>> w;  // per layer, out-major [out * in]
    std::vector<std::vector<double>> b;  // per layer, [out]

    int num_layers() const { return static_cast<int>(sizes.size()) - 1; }
    int input_dim() const { return sizes.front(); }
    int output_dim() const { return sizes.back(); }
    size_t param_count() const;
};

/// Uniform init in +-1/sqrt(fan_in), weights then biases, layer by layer.
Mlp make_mlp(const std::vector<int>& sizes, Mlp::Output output, Rng& rng);

/// Forward activations kept for the backward pass. acts[0] is the input batch,
/// acts[l] the post-activation output of layer l; pre[l] the pre-activation.
struct MlpCache {
    int batch = 0;
    std::vector<std::vector<double>> acts;
    std::vector<std::vector<double>> pre;
};

/// Batched forward. y must hold batch * output_dim. cache may be null when no
/// backward pass follows. Throws std::invalid_argument on a dimension mismatch.
void mlp_forward(const Mlp& net, const double* x, int batch, double* y,
                 MlpCache* cache);

/// Single-input convenience wrapper.
std::vector<double> mlp_forward(const Mlp& net, const std::vector<double>& x);

struct MlpGrads {
    std::vector<std::vector<double>> dw, db;
};

MlpGrads make_grads(const Mlp& net);

/// Reverse mode from dL/dy (batch * output_dim). Overwrites grads; writes
/// dL/dx into dx when non-null (batch * input_dim).
void mlp_backward(const Mlp& net, const MlpCache& cache, const double* dy,
                  MlpGrads& grads, double* dx);

/// Flat views in a fixed order (layer by layer, weights then biases); used by
/// the finite-difference tests and the checkpoint code.
std::vector<double> flatten_params(const Mlp& net);
void load_params(Mlp& net, const std::vector<double>& flat);
std::vector<double> flatten_grads(const MlpGrads& grads);

struct AdamState {
    std::vector<std::vector<double>> m_w, v_w, m_b, v_b;
    int64_t step = 0;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
};

AdamState make_adam(const Mlp& net);

/// Standard bias-corrected Adam update, in place.
void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state, double lr);

/// target <- tau * source + (1 - tau) * target, elementwise.
void soft_update(Mlp& target, const Mlp& source, double tau);

}  // namespace starcache
