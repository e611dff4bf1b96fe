#pragma once

#include <span>
#include <vector>

#include "pisim/rng.hpp"

namespace pisim {

// Actor-critic network: shared trunk obs -> 64 -> 64 -> 64 with ELU
// activations, a softmax actor head and a scalar critic head. Parameters
// live in one flat vector so clipping, Adam and checkpointing operate on a
// single buffer.
class PolicyValueNet {
public:
    struct ForwardCache {
        std::vector<double> input;
        std::vector<double> pre[3];   // trunk pre-activations
        std::vector<double> act[3];   // trunk post-ELU activations
        std::vector<double> logits;
        std::vector<double> probs;
        double value = 0.0;
    };

    PolicyValueNet(int obs_dim, int num_actions, Rng& init_rng);

    int obs_dim() const { return obs_dim_; }
    int num_actions() const { return num_actions_; }
    std::size_t num_params() const { return params_.size(); }

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    void forward(std::span<const double> obs, ForwardCache& cache) const;
    double value_of(std::span<const double> obs) const;

    // Accumulates into grad the gradient of a loss whose derivative w.r.t.
    // the actor pre-softmax logits is d_logits and w.r.t. the critic output
    // is d_value, for the forward pass captured in cache.
    void backward(const ForwardCache& cache, std::span<const double> d_logits,
                  double d_value, std::span<double> grad) const;

    static constexpr int kHidden = 64;

private:
    struct Layer {
        std::size_t w_off, b_off;
        int rows, cols;
    };

    void trunk_forward(std::span<const double> obs, ForwardCache& cache) const;

    int obs_dim_, num_actions_;
    Layer trunk_[3], actor_, critic_;
    std::vector<double> params_;
};

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

class Adam {
public:
    Adam(std::size_t n, AdamConfig cfg = {}) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::span<double> params, std::span<const double> grad);
    const AdamConfig& config() const { return cfg_; }

private:
    AdamConfig cfg_;
    std::vector<double> m_, v_;
    long t_ = 0;
};

// Rescales grad so its global L2 norm is at most max_norm; returns the
// pre-clipping norm.
double clip_global_norm(std::span<double> grad, double max_norm);

}  // namespace pisim
