#pragma once

#include <string>

#include "pisim/env.hpp"

namespace pisim {

struct HarvestRegrowthRates {
    double low = 0.01;   // 1-2 apples within radius 2
    double mid = 0.05;   // 3-4 apples
    double high = 0.1;   // >=5 apples
};

// Commons harvesting game on a fixed 25x9 map. Agents collect apples (+1)
// under a per-step time penalty (-0.1); apples regrow at a rate driven by
// the number of apples nearby. Agents can tag others out of the game for 25
// steps. Observations are egocentric 7x7 windows.
class HarvestEnv : public Environment {
public:
    // Actions: 4 moves, 4 directional tags, no-op.
    static constexpr int kMoveLeft = 0, kMoveRight = 1, kMoveUp = 2, kMoveDown = 3;
    static constexpr int kTagLeft = 4, kTagRight = 5, kTagUp = 6, kTagDown = 7;
    static constexpr int kNoop = 8;

    static constexpr int kViewRadius = 3;    // 7x7 window
    static constexpr int kTagDuration = 25;

    using RegrowthRates = HarvestRegrowthRates;

    explicit HarvestEnv(int num_agents = 6, int time_limit = 250,
                        RegrowthRates rates = RegrowthRates());

    // Map file: one char per cell ('.' empty, 'A' apple spot, '#' wall),
    // 25 columns x 9 rows.
    static std::string default_map();
    void load_map(const std::string& text);

    int num_agents() const override { return num_agents_; }
    int num_actions() const override { return 9; }
    int obs_dim() const override { return 7 * 7 * 4; }
    int time_limit() const override { return time_limit_; }
    int noop_action() const override { return kNoop; }
    int step_count() const override { return step_count_; }

    void reset(Rng& rng) override;
    std::vector<double> observe(AgentId agent) const override;
    std::vector<double> step(std::span<const int> joint_action, Rng& rng) override;
    std::vector<std::vector<AgentId>> neighborhoods() const override;

    std::map<std::string, double> episode_stats() const override {
        return {{"apples", static_cast<double>(apples_harvested_)}};
    }

    bool agent_active(AgentId i) const { return step_count_ >= tagged_until_[i]; }
    int apple_count() const;
    int apple_spot_count() const;

    // Test hooks.
    void set_agent_position(AgentId i, int row, int col) { agent_pos_[i] = {row, col}; }
    void set_apple(int row, int col, bool present);
    bool apple_at(int row, int col) const { return apple_[cell(row, col)]; }
    void regrow(Rng& rng);
    double regrowth_probability(int row, int col) const;
    void tag_agent(AgentId i) { tagged_until_[i] = step_count_ + 1 + kTagDuration; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int cell(int r, int c) const { return r * cols_ + c; }
    bool in_bounds(int r, int c) const { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

    int num_agents_, time_limit_;
    RegrowthRates rates_;
    int rows_ = 0, cols_ = 0;
    std::vector<char> terrain_;   // '.', 'A', '#'
    std::vector<char> apple_;     // apple currently present
    std::vector<std::pair<int, int>> agent_pos_;
    std::vector<int> tagged_until_;
    long apples_harvested_ = 0;
    int step_count_ = 0;
};

}  // namespace pisim
