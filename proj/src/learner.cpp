#include "pisim/learner.hpp"

#include <cmath>
#include <stdexcept>

namespace pisim {

std::vector<double> td_advantages(const PolicyValueNet& net,
                                  std::span<const ExperienceStep> steps, double gamma) {
    std::vector<double> adv(steps.size());
    for (std::size_t t = 0; t < steps.size(); ++t) {
        double v = net.value_of(steps[t].history);
        double v_next = net.value_of(steps[t].next_observation);
        adv[t] = steps[t].shaped_reward + gamma * v_next - v;
    }
    return adv;
}

Learner::Learner(int obs_dim, int num_actions, LearnerConfig cfg, Rng init_rng, Rng action_rng)
    : cfg_(cfg),
      net_(obs_dim, num_actions, init_rng),
      opt_(0, AdamConfig{.lr = cfg.learning_rate}),
      action_rng_(action_rng) {
    opt_ = Adam(net_.num_params(), AdamConfig{.lr = cfg.learning_rate});
    grad_.assign(net_.num_params(), 0.0);
}

std::vector<double> Learner::episode_gradient(std::span<const ExperienceStep> steps) const {
    std::vector<double> grad(net_.num_params(), 0.0);
    std::vector<double> d_logits(net_.num_actions());

    // history[t+1] == next_observation[t], so one forward pass per step
    // plus one value evaluation for the final bootstrap covers all values.
    std::vector<PolicyValueNet::ForwardCache> caches(steps.size());
    for (std::size_t t = 0; t < steps.size(); ++t) net_.forward(steps[t].history, caches[t]);
    double final_value = net_.value_of(steps.back().next_observation);

    for (std::size_t t = 0; t < steps.size(); ++t) {
        const auto& step = steps[t];
        const auto& cache = caches[t];
        double v_next = t + 1 < steps.size() ? caches[t + 1].value : final_value;
        double target = step.shaped_reward + cfg_.gamma * v_next;
        double delta = target - cache.value;

        // Actor: d/dlogit_k of -delta log pi(a) = delta (pi_k - 1{k=a}).
        for (int k = 0; k < net_.num_actions(); ++k)
            d_logits[k] = delta * (cache.probs[k] - (k == step.action ? 1.0 : 0.0));

        if (cfg_.entropy_coef > 0.0) {
            double entropy = 0.0;
            for (double p : cache.probs)
                if (p > 0.0) entropy -= p * std::log(p);
            for (int k = 0; k < net_.num_actions(); ++k) {
                double p = cache.probs[k];
                if (p > 0.0) d_logits[k] += cfg_.entropy_coef * p * (std::log(p) + entropy);
            }
        }

        // Critic: d/dV of (target - V)^2 with the target frozen.
        double d_value = -2.0 * delta;
        net_.backward(cache, d_logits, d_value, grad);
    }
    return grad;
}

double frozen_episode_loss(const PolicyValueNet& net,
                           std::span<const ExperienceStep> steps,
                           std::span<const double> advantages,
                           std::span<const double> targets, double entropy_coef) {
    double loss = 0.0;
    PolicyValueNet::ForwardCache cache;
    for (std::size_t t = 0; t < steps.size(); ++t) {
        net.forward(steps[t].history, cache);
        loss += -advantages[t] * std::log(cache.probs[steps[t].action]);
        double resid = targets[t] - cache.value;
        loss += resid * resid;
        if (entropy_coef > 0.0) {
            double entropy = 0.0;
            for (double p : cache.probs)
                if (p > 0.0) entropy -= p * std::log(p);
            loss -= entropy_coef * entropy;
        }
    }
    return loss;
}

void Learner::update(std::span<const ExperienceStep> steps) {
    if (steps.empty()) return;
    grad_.assign(net_.num_params(), 0.0);
    std::vector<double> g = episode_gradient(steps);
    for (double v : g)
        if (!std::isfinite(v))
            throw std::runtime_error("non-finite gradient in learner update");
    clip_global_norm(g, cfg_.clip_norm);
    opt_.step(net_.params(), g);
}

}  // namespace pisim
