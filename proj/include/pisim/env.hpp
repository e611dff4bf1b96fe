#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pisim/rng.hpp"

namespace pisim {

using AgentId = int;

// Synchronous multi-agent environment. All episodes end by time limit.
class Environment {
public:
    virtual ~Environment() = default;

    virtual int num_agents() const = 0;
    virtual int num_actions() const = 0;
    virtual int obs_dim() const = 0;
    virtual int time_limit() const = 0;

    // Action substituted by protocols that replace an env action with a
    // stand-in (gift actions resolve to a no-move).
    virtual int noop_action() const = 0;

    virtual void reset(Rng& rng) = 0;
    virtual std::vector<double> observe(AgentId agent) const = 0;

    // Steps with the joint action, returns per-agent environment rewards.
    virtual std::vector<double> step(std::span<const int> joint_action, Rng& rng) = 0;

    // Exchange partners per agent, excluding self. Default: everyone else.
    virtual std::vector<std::vector<AgentId>> neighborhoods() const;

    virtual int step_count() const = 0;
    bool done() const { return step_count() >= time_limit(); }

    // Episode counters beyond rewards (e.g. coins collected); cleared on
    // reset.
    virtual std::map<std::string, double> episode_stats() const { return {}; }
};

}  // namespace pisim
