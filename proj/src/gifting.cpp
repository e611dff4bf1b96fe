#include "pisim/gifting.hpp"

#include <stdexcept>

namespace pisim {

std::vector<double> GiftingProtocol::exchange(std::span<const int> joint_action,
                                              const StepContext& ctx, Rng&) {
    std::vector<double> shaped(ctx.env_rewards.begin(), ctx.env_rewards.end());
    const auto& nbhd = *ctx.neighborhoods;
    for (int i = 0; i < num_agents_; ++i) {
        int a = joint_action[i];
        if (a < env_actions_) continue;
        int k = a - env_actions_;
        if (k >= num_agents_ - 1) throw std::invalid_argument("gift action out of range");
        AgentId target = k < i ? k : k + 1;

        // Gifts reach exchange partners only.
        bool reachable = false;
        for (AgentId j : nbhd[i])
            if (j == target) { reachable = true; break; }
        if (!reachable) continue;

        if (mode_ == GiftingMode::kZeroSum) {
            shaped[target] += gift_value_;
            shaped[i] -= gift_value_;
        } else {
            if (budget_[i] >= gift_value_) {
                shaped[target] += gift_value_;
                budget_[i] -= gift_value_;
            }
        }
    }
    return shaped;
}

}  // namespace pisim
