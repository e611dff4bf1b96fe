#pragma once

#include <span>
#include <string>
#include <vector>

#include "pisim/env.hpp"
#include "pisim/rollout.hpp"

namespace pisim {

// Per-step inputs to the exchange phase, snapshotted before any shaping.
struct StepContext {
    std::span<const double> env_rewards;
    std::span<const double> value_cur;   // V(z_t) per agent
    std::span<const double> value_next;  // V(z_{t+1}) per agent
    const std::vector<std::vector<AgentId>>* neighborhoods;
    double gamma;
};

// Peer-incentivization protocol layer. Exchange runs synchronously within
// each step and returns shaped rewards; the per-epoch hook fires once after
// the last episode of an epoch.
class Protocol {
public:
    virtual ~Protocol() = default;

    virtual std::string name() const = 0;

    // Extra discrete actions appended to the environment action space
    // (gifting adds one gift action per other agent).
    virtual int extra_actions() const { return 0; }

    virtual void begin_episode() {}

    // Maps an extended action to the action the environment executes.
    virtual int to_env_action(int action, const Environment& env) const {
        (void)env;
        return action;
    }

    virtual std::vector<double> exchange(std::span<const int> joint_action,
                                         const StepContext& ctx, Rng& rng) = 0;

    virtual void end_epoch(const std::vector<EpisodeRollout>& rollouts,
                           const std::vector<std::vector<AgentId>>& topology, Rng& rng) {
        (void)rollouts;
        (void)topology;
        (void)rng;
    }

    // Current per-agent token values; empty when the protocol has none.
    virtual std::vector<double> tokens() const { return {}; }
};

class NaiveProtocol : public Protocol {
public:
    std::string name() const override { return "naive"; }
    std::vector<double> exchange(std::span<const int>, const StepContext& ctx,
                                 Rng&) override {
        return {ctx.env_rewards.begin(), ctx.env_rewards.end()};
    }
};

}  // namespace pisim
