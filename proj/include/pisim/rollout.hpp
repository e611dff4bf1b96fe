#pragma once

#include <vector>

#include "pisim/env.hpp"

namespace pisim {

// One agent's record of one time step. History length is 1, so `history`
// is just the observation the action was taken from.
struct ExperienceStep {
    std::vector<double> history;
    int action = 0;
    double env_reward = 0.0;
    double shaped_reward = 0.0;
    std::vector<double> next_observation;
    double value_estimate = 0.0;       // V(history) at action time
    double next_value_estimate = 0.0;  // V(next_observation) at action time
};

struct EpisodeRollout {
    std::vector<std::vector<ExperienceStep>> agents;  // [agent][t]
    bool terminal = false;  // episodes end by time limit only
    std::vector<std::vector<AgentId>> final_neighborhoods;

    int length() const { return agents.empty() ? 0 : static_cast<int>(agents[0].size()); }
};

}  // namespace pisim
