#pragma once

#include <algorithm>

#include "pisim/protocol.hpp"

namespace pisim {

enum class GiftingMode { kZeroSum, kFixedBudget };

// Gifting baseline: the action space grows by one gift action per other
// agent; choosing a gift action performs a no-move in the environment and
// transfers gift_value to the target's shaped reward. Zero-sum mode charges
// the sender the same amount; fixed-budget mode draws from a per-episode
// budget instead and exhausted budgets make gifts no-ops.
class GiftingProtocol : public Protocol {
public:
    GiftingProtocol(int num_agents, int env_actions, GiftingMode mode,
                    double gift_value = 1.0, double episode_budget = 15.0)
        : num_agents_(num_agents),
          env_actions_(env_actions),
          mode_(mode),
          gift_value_(gift_value),
          episode_budget_(episode_budget),
          budget_(num_agents, episode_budget) {}

    std::string name() const override {
        return mode_ == GiftingMode::kZeroSum ? "gift-zerosum" : "gift-budget";
    }

    int extra_actions() const override { return num_agents_ - 1; }

    void begin_episode() override {
        std::fill(budget_.begin(), budget_.end(), episode_budget_);
    }

    int to_env_action(int action, const Environment& env) const override {
        return action >= env_actions_ ? env.noop_action() : action;
    }

    std::vector<double> exchange(std::span<const int> joint_action,
                                 const StepContext& ctx, Rng&) override;

    double remaining_budget(AgentId i) const { return budget_[i]; }

    // Gift action index targeting `target` from `sender`'s action space.
    int gift_action(AgentId sender, AgentId target) const {
        return env_actions_ + target - (target > sender ? 1 : 0);
    }

private:
    int num_agents_, env_actions_;
    GiftingMode mode_;
    double gift_value_, episode_budget_;
    std::vector<double> budget_;
};

}  // namespace pisim
