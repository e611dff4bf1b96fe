#pragma once

#include <stdexcept>

#include "pisim/protocol.hpp"

namespace pisim {

// Per-step TD error on the environment reward; the monotonic-improvement
// measure driving requests and responses.
inline double mate_mi(double env_reward, double value_cur, double value_next, double gamma) {
    return env_reward + gamma * value_next - value_cur;
}

// Mutual acknowledgment token exchange. Two phases per step:
//   request  - agents with non-negative MI send their token to all
//              neighbors (requests are never negative);
//   response - each agent evaluates the sum of received requests against
//              its MI; acceptance adds the requests to its shaped reward
//              and returns +token to every requester, rejection returns
//              -token. Responses are added to the requesters' shaped
//              rewards.
// A single token shared by all agents is the centralized mode; per-agent
// tokens are the decentralized mode.
class MateProtocol : public Protocol {
public:
    explicit MateProtocol(std::vector<double> tokens) : token_(std::move(tokens)) {
        for (double t : token_)
            if (t < 0.0) throw std::invalid_argument("MATE tokens must be non-negative");
    }

    MateProtocol(int num_agents, double token)
        : MateProtocol(std::vector<double>(num_agents, token)) {}

    std::string name() const override { return "mate"; }

    std::vector<double> exchange(std::span<const int> joint_action,
                                 const StepContext& ctx, Rng& rng) override;

    std::vector<double> tokens() const override { return token_; }

protected:
    std::vector<double> token_;
};

}  // namespace pisim
