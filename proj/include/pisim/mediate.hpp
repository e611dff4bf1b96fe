#pragma once

#include <memory>
#include <ostream>

#include "pisim/mate.hpp"
#include "pisim/token.hpp"

namespace pisim {

enum class MediateVariant {
    kAutomate,      // token derivation only, no consensus
    kIsolated,      // consensus runs, update uses the previous local token
    kSynchronized,  // update replaces the local token with the consensus token
};

// MATE exchange with automatically derived tokens. Once per epoch each
// agent folds the epoch's rollouts into its token state (running minimum
// reward, median of per-episode mean values), derives a token increment and
// applies the variant's update, clamped to non-negative values.
class MediateProtocol : public MateProtocol {
public:
    MediateProtocol(int num_agents, MediateVariant variant, double alpha = 0.1,
                    int consensus_iterations = 0,  // 0 => number of agents
                    std::ostream* consensus_trace = nullptr);

    std::string name() const override;

    void end_epoch(const std::vector<EpisodeRollout>& rollouts,
                   const std::vector<std::vector<AgentId>>& topology, Rng& rng) override;

    const std::vector<TokenState>& states() const { return states_; }
    const std::vector<double>& last_gradients() const { return last_gradients_; }
    const std::vector<ConsensusResult>& last_consensus() const { return last_consensus_; }

private:
    MediateVariant variant_;
    double alpha_;
    int consensus_iterations_;
    std::ostream* trace_;
    std::vector<TokenState> states_;
    std::vector<double> last_gradients_;
    std::vector<ConsensusResult> last_consensus_;
};

}  // namespace pisim
