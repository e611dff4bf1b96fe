#pragma once

#include <array>

#include "pisim/env.hpp"

namespace pisim {

// Iterated Prisoner's Dilemma. Actions: 0 = cooperate, 1 = defect.
// Observation per agent: [own last action, opponent last action] as {0,1};
// zeros before the first step.
class IpdEnv : public Environment {
public:
    static constexpr int kCooperate = 0;
    static constexpr int kDefect = 1;

    explicit IpdEnv(int time_limit = 150) : time_limit_(time_limit) {}

    int num_agents() const override { return 2; }
    int num_actions() const override { return 2; }
    int obs_dim() const override { return 2; }
    int time_limit() const override { return time_limit_; }
    int noop_action() const override { return kCooperate; }
    int step_count() const override { return step_count_; }

    void reset(Rng&) override {
        last_joint_ = {0, 0};
        has_history_ = false;
        step_count_ = 0;
    }

    std::vector<double> observe(AgentId agent) const override {
        if (!has_history_) return {0.0, 0.0};
        return {static_cast<double>(last_joint_[agent]),
                static_cast<double>(last_joint_[1 - agent])};
    }

    std::vector<double> step(std::span<const int> joint_action, Rng&) override;

private:
    int time_limit_;
    std::array<int, 2> last_joint_{0, 0};
    bool has_history_ = false;
    int step_count_ = 0;
};

}  // namespace pisim
