#pragma once

#include <utility>

#include "pisim/env.hpp"

namespace pisim {

// Coin Game on a square grid. Each agent has a color; one coin of a random
// color exists at all times. Collecting any coin pays +1*scale; collecting a
// foreign coin costs its owner 2*scale. The rescaled variant uses scale 0.1.
class CoinGameEnv : public Environment {
public:
    static constexpr int kLeft = 0, kRight = 1, kUp = 2, kDown = 3, kStay = 4;

    CoinGameEnv(int num_agents, double reward_scale = 1.0, int time_limit = 150);

    int num_agents() const override { return num_agents_; }
    int num_actions() const override { return 4; }
    int obs_dim() const override { return grid_size_ * grid_size_ * 4; }
    int time_limit() const override { return time_limit_; }
    int noop_action() const override { return kStay; }
    int step_count() const override { return step_count_; }
    int grid_size() const { return grid_size_; }

    void reset(Rng& rng) override;
    std::vector<double> observe(AgentId agent) const override;
    std::vector<double> step(std::span<const int> joint_action, Rng& rng) override;

    std::map<std::string, double> episode_stats() const override {
        return {{"occ", static_cast<double>(own_coins_)},
                {"tcc", static_cast<double>(total_coins_)}};
    }

    // Test hooks: pin an exact state.
    void set_state(std::vector<std::pair<int, int>> agent_positions,
                   std::pair<int, int> coin_position, AgentId coin_owner);
    std::pair<int, int> coin_position() const { return coin_pos_; }
    AgentId coin_owner() const { return coin_owner_; }
    std::pair<int, int> agent_position(AgentId i) const { return agent_pos_[i]; }

private:
    void spawn_coin(Rng& rng);

    int num_agents_, grid_size_, time_limit_;
    double scale_;
    std::vector<std::pair<int, int>> agent_pos_;
    std::pair<int, int> coin_pos_{0, 0};
    AgentId coin_owner_ = 0;
    long own_coins_ = 0, total_coins_ = 0;
    int step_count_ = 0;
};

}  // namespace pisim
