#include "pisim/env_ipd.hpp"

#include <stdexcept>

namespace pisim {

std::vector<double> IpdEnv::step(std::span<const int> joint_action, Rng&) {
    if (joint_action.size() != 2) throw std::invalid_argument("IPD expects 2 actions");
    // Payoff matrix: CC (-1,-1), CD (-3,0), DC (0,-3), DD (-2,-2).
    static constexpr double payoff[2][2][2] = {
        {{-1.0, -1.0}, {-3.0, 0.0}},
        {{0.0, -3.0}, {-2.0, -2.0}},
    };
    int a0 = joint_action[0], a1 = joint_action[1];
    last_joint_ = {a0, a1};
    has_history_ = true;
    ++step_count_;
    return {payoff[a0][a1][0], payoff[a0][a1][1]};
}

std::vector<std::vector<AgentId>> Environment::neighborhoods() const {
    std::vector<std::vector<AgentId>> out(num_agents());
    for (int i = 0; i < num_agents(); ++i)
        for (int j = 0; j < num_agents(); ++j)
            if (j != i) out[i].push_back(j);
    return out;
}

}  // namespace pisim
