#pragma once

#include <span>
#include <vector>

#include "pisim/nn.hpp"
#include "pisim/rollout.hpp"

namespace pisim {

struct LearnerConfig {
    double learning_rate = 1e-3;
    double clip_norm = 1.0;
    double gamma = 0.95;
    double entropy_coef = 0.0;
};

// TD(0) advantages over one agent's rollout, using shaped rewards and
// bootstrapping the final step from its next observation (time-limit
// truncation, not a true terminal).
std::vector<double> td_advantages(const PolicyValueNet& net,
                                  std::span<const ExperienceStep> steps, double gamma);

// Episode loss with advantages and TD targets held fixed; its gradient in
// the parameters is what episode_gradient computes. Used by the
// finite-difference gradient checks.
double frozen_episode_loss(const PolicyValueNet& net,
                           std::span<const ExperienceStep> steps,
                           std::span<const double> advantages,
                           std::span<const double> targets, double entropy_coef);

// Independent advantage actor-critic learner. One on-policy gradient step
// per episode; loss is -sum_t d_t log pi(a_t) + sum_t d_t^2 with d treated
// as a constant in the actor term and the TD target frozen in the critic
// term. The global gradient norm is clipped before the Adam step.
class Learner {
public:
    Learner(int obs_dim, int num_actions, LearnerConfig cfg, Rng init_rng, Rng action_rng);

    int sample_action(const PolicyValueNet::ForwardCache& fwd) {
        return action_rng_.categorical(fwd.probs);
    }

    void forward(std::span<const double> obs, PolicyValueNet::ForwardCache& cache) const {
        net_.forward(obs, cache);
    }
    double value_of(std::span<const double> obs) const { return net_.value_of(obs); }

    void update(std::span<const ExperienceStep> steps);

    const PolicyValueNet& net() const { return net_; }
    PolicyValueNet& net() { return net_; }
    const LearnerConfig& config() const { return cfg_; }

    // Gradient of the combined episode loss at the current parameters,
    // without clipping or the optimizer step. Steps must form a contiguous
    // rollout (history[t+1] == next_observation[t]). Exposed for gradient
    // checks.
    std::vector<double> episode_gradient(std::span<const ExperienceStep> steps) const;

private:
    LearnerConfig cfg_;
    PolicyValueNet net_;
    Adam opt_;
    Rng action_rng_;
    std::vector<double> grad_;
};

}  // namespace pisim
