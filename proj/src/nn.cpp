#include "pisim/nn.hpp"

#include <cmath>
#include <stdexcept>

#include "pisim/kernels.hpp"

namespace pisim {
namespace {

inline double elu(double x) { return x > 0.0 ? x : std::expm1(x); }
// ELU'(x) expressed via the activation value: 1 for x>0, act+1 otherwise.
inline double elu_grad(double pre, double act) { return pre > 0.0 ? 1.0 : act + 1.0; }

void softmax(std::span<const double> logits, std::vector<double>& out) {
    out.resize(logits.size());
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
}

}  // namespace

PolicyValueNet::PolicyValueNet(int obs_dim, int num_actions, Rng& init_rng)
    : obs_dim_(obs_dim), num_actions_(num_actions) {
    if (obs_dim <= 0 || num_actions <= 0)
        throw std::invalid_argument("network dimensions must be positive");

    std::size_t off = 0;
    auto add_layer = [&](int rows, int cols) {
        Layer l{off, off + static_cast<std::size_t>(rows) * cols, rows, cols};
        off = l.b_off + rows;
        return l;
    };
    trunk_[0] = add_layer(kHidden, obs_dim);
    trunk_[1] = add_layer(kHidden, kHidden);
    trunk_[2] = add_layer(kHidden, kHidden);
    actor_ = add_layer(num_actions, kHidden);
    critic_ = add_layer(1, kHidden);
    params_.assign(off, 0.0);

    // Trunk layers use uniform fan-in init for weights and biases. Nonzero
    // trunk biases keep an all-zero observation from producing identically
    // zero activations everywhere, which would leave its policy and value
    // trainable only through biases.
    //
    // Both head weight matrices start at zero: the initial policy is uniform
    // and the initial value estimate is flat across observations, so no
    // spurious observation ordering is baked into early advantages. The
    // actor head bias also starts at zero (uniform policy); the critic head
    // bias starts at a small positive constant (the fan-in bound) so early
    // value estimates are a nonzero constant rather than anchored at exactly
    // 0, which would make the first epochs' relative value changes (and
    // statistics derived from them) arbitrarily large. The constant is
    // deterministic and positive so the early value trajectory stays bounded
    // away from zero under the upward drift of a warming critic.
    auto init_layer = [&](const Layer& l) {
        double bound = 1.0 / std::sqrt(static_cast<double>(l.cols));
        for (std::size_t i = 0; i < static_cast<std::size_t>(l.rows) * l.cols; ++i)
            params_[l.w_off + i] = init_rng.uniform(-bound, bound);
        for (int r = 0; r < l.rows; ++r)
            params_[l.b_off + r] = init_rng.uniform(-bound, bound);
    };
    init_layer(trunk_[0]);
    init_layer(trunk_[1]);
    init_layer(trunk_[2]);
    params_[critic_.b_off] = 1.0 / std::sqrt(static_cast<double>(critic_.cols));
}

void PolicyValueNet::trunk_forward(std::span<const double> obs, ForwardCache& cache) const {
    if (static_cast<int>(obs.size()) != obs_dim_)
        throw std::invalid_argument("observation dimension mismatch");
    const auto& k = kern::active();
    cache.input.assign(obs.begin(), obs.end());
    const double* in = cache.input.data();
    for (int l = 0; l < 3; ++l) {
        const Layer& lay = trunk_[l];
        cache.pre[l].resize(lay.rows);
        cache.act[l].resize(lay.rows);
        k.matvec(params_.data() + lay.w_off, in, params_.data() + lay.b_off,
                 cache.pre[l].data(), lay.rows, lay.cols);
        for (int r = 0; r < lay.rows; ++r) cache.act[l][r] = elu(cache.pre[l][r]);
        in = cache.act[l].data();
    }
}

void PolicyValueNet::forward(std::span<const double> obs, ForwardCache& cache) const {
    trunk_forward(obs, cache);
    const auto& k = kern::active();
    const double* h = cache.act[2].data();
    cache.logits.resize(num_actions_);
    k.matvec(params_.data() + actor_.w_off, h, params_.data() + actor_.b_off,
             cache.logits.data(), actor_.rows, actor_.cols);
    softmax(cache.logits, cache.probs);
    double v;
    k.matvec(params_.data() + critic_.w_off, h, params_.data() + critic_.b_off,
             &v, 1, critic_.cols);
    cache.value = v;
}

double PolicyValueNet::value_of(std::span<const double> obs) const {
    ForwardCache cache;
    trunk_forward(obs, cache);
    double v;
    kern::active().matvec(params_.data() + critic_.w_off, cache.act[2].data(),
                          params_.data() + critic_.b_off, &v, 1, critic_.cols);
    return v;
}

void PolicyValueNet::backward(const ForwardCache& cache, std::span<const double> d_logits,
                              double d_value, std::span<double> grad) const {
    const auto& k = kern::active();
    std::vector<double> dh(kHidden, 0.0);

    // Actor head: dWa += d_logits outer h2, dh += Wa^T d_logits.
    const double* h2 = cache.act[2].data();
    for (int r = 0; r < actor_.rows; ++r) {
        double g = d_logits[r];
        if (g != 0.0) {
            k.axpy(g, h2, grad.data() + actor_.w_off + static_cast<std::size_t>(r) * actor_.cols,
                   actor_.cols);
            k.axpy(g, params_.data() + actor_.w_off + static_cast<std::size_t>(r) * actor_.cols,
                   dh.data(), actor_.cols);
        }
        grad[actor_.b_off + r] += g;
    }

    // Critic head.
    if (d_value != 0.0) {
        k.axpy(d_value, h2, grad.data() + critic_.w_off, critic_.cols);
        k.axpy(d_value, params_.data() + critic_.w_off, dh.data(), critic_.cols);
    }
    grad[critic_.b_off] += d_value;

    // Trunk, back to front.
    std::vector<double> dprev;
    for (int l = 2; l >= 0; --l) {
        const Layer& lay = trunk_[l];
        for (int r = 0; r < lay.rows; ++r)
            dh[r] *= elu_grad(cache.pre[l][r], cache.act[l][r]);
        const double* in = l == 0 ? cache.input.data() : cache.act[l - 1].data();
        dprev.assign(lay.cols, 0.0);
        for (int r = 0; r < lay.rows; ++r) {
            double g = dh[r];
            if (g != 0.0) {
                k.axpy(g, in, grad.data() + lay.w_off + static_cast<std::size_t>(r) * lay.cols,
                       lay.cols);
                k.axpy(g, params_.data() + lay.w_off + static_cast<std::size_t>(r) * lay.cols,
                       dprev.data(), lay.cols);
            }
            grad[lay.b_off + r] += g;
        }
        dh = dprev;
    }
}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    ++t_;
    double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
        v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
        double mhat = m_[i] / bc1;
        double vhat = v_[i] / bc2;
        params[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
}

double clip_global_norm(std::span<double> grad, double max_norm) {
    double norm = std::sqrt(kern::active().sum_sq(grad.data(), grad.size()));
    if (norm > max_norm && norm > 0.0)
        kern::active().scale(max_norm / norm, grad.data(), grad.size());
    return norm;
}

}  // namespace pisim
