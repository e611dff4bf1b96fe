#include "pisim/game.hpp"

#include <stdexcept>

namespace pisim {

EpisodeRollout run_episode(Environment& env, std::vector<Learner>& agents,
                           Protocol& protocol, Rng& env_rng, Rng& protocol_rng) {
    const int n = env.num_agents();
    if (static_cast<int>(agents.size()) != n)
        throw std::invalid_argument("agent count does not match environment");

    protocol.begin_episode();
    env.reset(env_rng);

    std::vector<std::vector<double>> obs(n), next_obs(n);
    std::vector<PolicyValueNet::ForwardCache> fwd(n), next_fwd(n);
    for (int i = 0; i < n; ++i) {
        obs[i] = env.observe(i);
        agents[i].forward(obs[i], fwd[i]);
    }

    EpisodeRollout rollout;
    rollout.agents.resize(n);
    std::vector<int> actions(n), env_actions(n);
    std::vector<double> value_cur(n), value_next(n);
    const double gamma = agents[0].config().gamma;

    while (!env.done()) {
        auto neighborhoods = env.neighborhoods();

        for (int i = 0; i < n; ++i) {
            actions[i] = agents[i].sample_action(fwd[i]);
            env_actions[i] = protocol.to_env_action(actions[i], env);
            value_cur[i] = fwd[i].value;
        }

        std::vector<double> env_rewards = env.step(env_actions, env_rng);

        for (int i = 0; i < n; ++i) {
            next_obs[i] = env.observe(i);
            agents[i].forward(next_obs[i], next_fwd[i]);
            value_next[i] = next_fwd[i].value;
        }

        StepContext ctx{env_rewards, value_cur, value_next, &neighborhoods, gamma};
        std::vector<double> shaped = protocol.exchange(actions, ctx, protocol_rng);

        for (int i = 0; i < n; ++i) {
            rollout.agents[i].push_back(ExperienceStep{obs[i], actions[i], env_rewards[i],
                                                       shaped[i], next_obs[i], value_cur[i],
                                                       value_next[i]});
        }
        std::swap(obs, next_obs);
        std::swap(fwd, next_fwd);
    }

    rollout.terminal = false;  // time-limit truncation only
    rollout.final_neighborhoods = env.neighborhoods();
    return rollout;
}

std::vector<EpisodeRollout> run_epoch(
    Environment& env, std::vector<Learner>& agents, Protocol& protocol,
    int episodes_per_epoch, Rng& env_rng, Rng& protocol_rng,
    const std::function<void(const EpisodeRollout&)>& on_episode) {
    if (episodes_per_epoch < 1)
        throw std::invalid_argument("episodes_per_epoch must be >= 1");
    std::vector<EpisodeRollout> rollouts;
    rollouts.reserve(episodes_per_epoch);
    for (int e = 0; e < episodes_per_epoch; ++e) {
        EpisodeRollout rollout = run_episode(env, agents, protocol, env_rng, protocol_rng);
        if (on_episode) on_episode(rollout);
        for (std::size_t i = 0; i < agents.size(); ++i)
            agents[i].update(rollout.agents[i]);
        rollouts.push_back(std::move(rollout));
    }
    protocol.end_epoch(rollouts, rollouts.back().final_neighborhoods, protocol_rng);
    return rollouts;
}

}  // namespace pisim
