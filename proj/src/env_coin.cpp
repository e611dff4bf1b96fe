#include "pisim/env_coin.hpp"

#include <stdexcept>

namespace pisim {

CoinGameEnv::CoinGameEnv(int num_agents, double reward_scale, int time_limit)
    : num_agents_(num_agents), time_limit_(time_limit), scale_(reward_scale) {
    switch (num_agents) {
        case 2: grid_size_ = 3; break;
        case 4: grid_size_ = 5; break;
        case 6: grid_size_ = 7; break;
        default: throw std::invalid_argument("Coin Game supports 2, 4 or 6 agents");
    }
}

void CoinGameEnv::reset(Rng& rng) {
    agent_pos_.resize(num_agents_);
    for (auto& p : agent_pos_) {
        int cell = rng.uniform_int(grid_size_ * grid_size_);
        p = {cell / grid_size_, cell % grid_size_};
    }
    spawn_coin(rng);
    own_coins_ = total_coins_ = 0;
    step_count_ = 0;
}

void CoinGameEnv::spawn_coin(Rng& rng) {
    // Uniform over cells not occupied by any agent; uniform owner.
    std::vector<std::pair<int, int>> empty;
    for (int r = 0; r < grid_size_; ++r)
        for (int c = 0; c < grid_size_; ++c) {
            bool occupied = false;
            for (const auto& p : agent_pos_)
                if (p.first == r && p.second == c) { occupied = true; break; }
            if (!occupied) empty.emplace_back(r, c);
        }
    coin_pos_ = empty[rng.uniform_int(static_cast<int>(empty.size()))];
    coin_owner_ = rng.uniform_int(num_agents_);
}

std::vector<double> CoinGameEnv::step(std::span<const int> joint_action, Rng& rng) {
    if (static_cast<int>(joint_action.size()) != num_agents_)
        throw std::invalid_argument("joint action size mismatch");

    // Simultaneous moves; out-of-bounds moves are discarded. Agents may
    // share cells.
    for (int i = 0; i < num_agents_; ++i) {
        auto [r, c] = agent_pos_[i];
        switch (joint_action[i]) {
            case kLeft: c -= 1; break;
            case kRight: c += 1; break;
            case kUp: r -= 1; break;
            case kDown: r += 1; break;
            case kStay: break;
            default: throw std::invalid_argument("invalid Coin Game action");
        }
        if (r >= 0 && r < grid_size_ && c >= 0 && c < grid_size_)
            agent_pos_[i] = {r, c};
    }

    std::vector<double> rewards(num_agents_, 0.0);
    std::vector<AgentId> collectors;
    for (int i = 0; i < num_agents_; ++i)
        if (agent_pos_[i] == coin_pos_) collectors.push_back(i);

    if (!collectors.empty()) {
        bool owner_collected = false;
        for (AgentId i : collectors) {
            rewards[i] += 1.0 * scale_;
            if (i == coin_owner_)
                owner_collected = true;
            else
                rewards[coin_owner_] -= 2.0 * scale_;
        }
        total_coins_ += static_cast<long>(collectors.size());
        if (owner_collected) ++own_coins_;
        spawn_coin(rng);
    }
    ++step_count_;
    return rewards;
}

std::vector<double> CoinGameEnv::observe(AgentId agent) const {
    // Channels: self position, other agents, coin of own color, coin of
    // foreign color.
    const int cells = grid_size_ * grid_size_;
    std::vector<double> obs(4 * cells, 0.0);
    auto idx = [&](std::pair<int, int> p) { return p.first * grid_size_ + p.second; };
    obs[idx(agent_pos_[agent])] = 1.0;
    for (int j = 0; j < num_agents_; ++j)
        if (j != agent) obs[cells + idx(agent_pos_[j])] = 1.0;
    int coin_channel = coin_owner_ == agent ? 2 : 3;
    obs[coin_channel * cells + idx(coin_pos_)] = 1.0;
    return obs;
}

void CoinGameEnv::set_state(std::vector<std::pair<int, int>> agent_positions,
                            std::pair<int, int> coin_position, AgentId coin_owner) {
    if (static_cast<int>(agent_positions.size()) != num_agents_)
        throw std::invalid_argument("agent position count mismatch");
    agent_pos_ = std::move(agent_positions);
    coin_pos_ = coin_position;
    coin_owner_ = coin_owner;
}

}  // namespace pisim
