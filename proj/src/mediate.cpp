#include "pisim/mediate.hpp"

#include <algorithm>

namespace pisim {

MediateProtocol::MediateProtocol(int num_agents, MediateVariant variant, double alpha,
                                 int consensus_iterations, std::ostream* consensus_trace)
    : MateProtocol(std::vector<double>(num_agents, 0.1)),
      variant_(variant),
      alpha_(alpha),
      consensus_iterations_(consensus_iterations > 0 ? consensus_iterations : num_agents),
      trace_(consensus_trace),
      states_(num_agents),
      last_gradients_(num_agents, 0.0) {}

std::string MediateProtocol::name() const {
    switch (variant_) {
        case MediateVariant::kAutomate: return "automate";
        case MediateVariant::kIsolated: return "mediate-i";
        case MediateVariant::kSynchronized: return "mediate-s";
    }
    return "mediate";
}

void MediateProtocol::end_epoch(const std::vector<EpisodeRollout>& rollouts,
                                const std::vector<std::vector<AgentId>>& topology,
                                Rng& rng) {
    const int n = static_cast<int>(states_.size());

    // Fold the epoch's rollouts into each agent's state.
    for (int i = 0; i < n; ++i) {
        TokenState& st = states_[i];
        for (const auto& rollout : rollouts) {
            const auto& steps = rollout.agents[i];
            std::vector<double> env_rewards(steps.size()), values(steps.size());
            for (std::size_t t = 0; t < steps.size(); ++t) {
                env_rewards[t] = steps[t].env_reward;
                values[t] = steps[t].value_estimate;
            }
            track_r_min(st, env_rewards);
            st.epoch_mean_values.push_back(mean_accumulated_value(values));
        }
    }

    std::vector<double> current_median(n);
    for (int i = 0; i < n; ++i) {
        current_median[i] = median(states_[i].epoch_mean_values);
        last_gradients_[i] = token_gradient(states_[i].prev_median_mean_value,
                                            current_median[i], states_[i].r_min, alpha_);
    }

    // Consensus round over the current tokens (isolated shares them too,
    // its update just ignores the result).
    if (variant_ != MediateVariant::kAutomate) {
        std::vector<ShareBundle> bundles;
        bundles.reserve(n);
        for (int i = 0; i < n; ++i)
            bundles.push_back(make_shares(i, states_[i].token,
                                          static_cast<int>(topology[i].size()), rng));
        last_consensus_ = consensus_round(bundles, topology, consensus_iterations_, trace_);
    }

    for (int i = 0; i < n; ++i) {
        TokenState& st = states_[i];
        double base = variant_ == MediateVariant::kSynchronized
                          ? last_consensus_[i].consensus_token
                          : st.token;
        st.token = std::max(base + last_gradients_[i], 0.0);
        st.prev_median_mean_value = current_median[i];
        st.epoch_mean_values.clear();
        token_[i] = st.token;
    }
}

}  // namespace pisim
