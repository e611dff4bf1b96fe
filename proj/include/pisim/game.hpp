#pragma once

#include <functional>

#include "pisim/learner.hpp"
#include "pisim/protocol.hpp"

namespace pisim {

// Runs one episode to the time limit. Within a step all policies are
// sampled before the environment transitions, then the protocol exchange
// runs on the pre-transition neighborhoods.
EpisodeRollout run_episode(Environment& env, std::vector<Learner>& agents,
                           Protocol& protocol, Rng& env_rng, Rng& protocol_rng);

// Runs episodes_per_epoch episodes; each learner takes one on-policy update
// per episode, and the protocol's per-epoch hook fires once at the end.
// on_episode (optional) fires right after each episode finishes, before the
// learners update; the environment still holds its end-of-episode state.
std::vector<EpisodeRollout> run_epoch(
    Environment& env, std::vector<Learner>& agents, Protocol& protocol,
    int episodes_per_epoch, Rng& env_rng, Rng& protocol_rng,
    const std::function<void(const EpisodeRollout&)>& on_episode = nullptr);

}  // namespace pisim
