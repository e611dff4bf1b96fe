#include "pisim/env_harvest.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pisim {

std::string HarvestEnv::default_map() {
    return
        ".........................\n"
        "....A.......A.......A....\n"
        "...AAA.....AAA.....AAA...\n"
        "....A.......A.......A....\n"
        ".........................\n"
        "....A.......A.......A....\n"
        "...AAA.....AAA.....AAA...\n"
        "....A.......A.......A....\n"
        ".........................\n";
}

HarvestEnv::HarvestEnv(int num_agents, int time_limit, RegrowthRates rates)
    : num_agents_(num_agents), time_limit_(time_limit), rates_(rates) {
    load_map(default_map());
}

void HarvestEnv::load_map(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> grid_rows;
    while (std::getline(in, line))
        if (!line.empty()) grid_rows.push_back(line);
    if (grid_rows.empty()) throw std::invalid_argument("empty map");
    rows_ = static_cast<int>(grid_rows.size());
    cols_ = static_cast<int>(grid_rows[0].size());
    terrain_.assign(static_cast<std::size_t>(rows_) * cols_, '.');
    for (int r = 0; r < rows_; ++r) {
        if (static_cast<int>(grid_rows[r].size()) != cols_)
            throw std::invalid_argument("ragged map rows");
        for (int c = 0; c < cols_; ++c) {
            char ch = grid_rows[r][c];
            if (ch != '.' && ch != 'A' && ch != '#')
                throw std::invalid_argument("invalid map character");
            terrain_[cell(r, c)] = ch;
        }
    }
    apple_.assign(terrain_.size(), 0);
}

void HarvestEnv::reset(Rng& rng) {
    // All apple spots start grown.
    for (std::size_t i = 0; i < terrain_.size(); ++i) apple_[i] = terrain_[i] == 'A';

    // Agents spawn on distinct plain cells.
    std::vector<int> plain;
    for (int i = 0; i < static_cast<int>(terrain_.size()); ++i)
        if (terrain_[i] == '.') plain.push_back(i);
    rng.shuffle(std::span<int>(plain));
    if (static_cast<int>(plain.size()) < num_agents_)
        throw std::runtime_error("map too small for agent count");
    agent_pos_.resize(num_agents_);
    for (int i = 0; i < num_agents_; ++i)
        agent_pos_[i] = {plain[i] / cols_, plain[i] % cols_};

    tagged_until_.assign(num_agents_, 0);
    apples_harvested_ = 0;
    step_count_ = 0;
}

std::vector<double> HarvestEnv::step(std::span<const int> joint_action, Rng& rng) {
    if (static_cast<int>(joint_action.size()) != num_agents_)
        throw std::invalid_argument("joint action size mismatch");

    std::vector<double> rewards(num_agents_, 0.0);
    std::vector<char> active(num_agents_);
    for (int i = 0; i < num_agents_; ++i) active[i] = agent_active(i);

    // Agents act one at a time in random order; an agent tagged earlier in
    // the same step loses its action.
    std::vector<int> order(num_agents_);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));

    std::vector<char> tagged_now(num_agents_, 0);
    for (int i : order) {
        if (!active[i] || tagged_now[i]) continue;
        int a = joint_action[i];
        auto [r, c] = agent_pos_[i];
        switch (a) {
            case kMoveLeft:
            case kMoveRight:
            case kMoveUp:
            case kMoveDown: {
                int nr = r + (a == kMoveDown) - (a == kMoveUp);
                int nc = c + (a == kMoveRight) - (a == kMoveLeft);
                if (in_bounds(nr, nc) && terrain_[cell(nr, nc)] != '#') {
                    agent_pos_[i] = {nr, nc};
                    if (apple_[cell(nr, nc)]) {
                        apple_[cell(nr, nc)] = 0;
                        rewards[i] += 1.0;
                        ++apples_harvested_;
                    }
                }
                break;
            }
            case kTagLeft:
            case kTagRight:
            case kTagUp:
            case kTagDown: {
                // Beam: all active agents within the 7x7 window strictly in
                // the chosen direction.
                for (int j = 0; j < num_agents_; ++j) {
                    if (j == i || !active[j] || tagged_now[j]) continue;
                    int dr = agent_pos_[j].first - r;
                    int dc = agent_pos_[j].second - c;
                    if (std::abs(dr) > kViewRadius || std::abs(dc) > kViewRadius) continue;
                    bool hit = (a == kTagLeft && dc < 0) || (a == kTagRight && dc > 0) ||
                               (a == kTagUp && dr < 0) || (a == kTagDown && dr > 0);
                    if (hit) {
                        tagged_now[j] = 1;
                        tagged_until_[j] = step_count_ + 1 + kTagDuration;
                    }
                }
                break;
            }
            case kNoop:
                break;
            default:
                throw std::invalid_argument("invalid Harvest action");
        }
    }

    // Time penalty for agents active at the start of the step.
    for (int i = 0; i < num_agents_; ++i)
        if (active[i]) rewards[i] -= 0.1;

    regrow(rng);
    ++step_count_;
    return rewards;
}

double HarvestEnv::regrowth_probability(int row, int col) const {
    if (terrain_[cell(row, col)] != 'A' || apple_[cell(row, col)]) return 0.0;
    int nearby = 0;
    for (int dr = -2; dr <= 2; ++dr)
        for (int dc = -2; dc <= 2; ++dc) {
            int r = row + dr, c = col + dc;
            if (in_bounds(r, c) && apple_[cell(r, c)]) ++nearby;
        }
    if (nearby == 0) return 0.0;
    if (nearby <= 2) return rates_.low;
    if (nearby <= 4) return rates_.mid;
    return rates_.high;
}

void HarvestEnv::regrow(Rng& rng) {
    // Counts are taken against a snapshot so regrowth events within one
    // pass are independent. Cells under an agent do not regrow.
    std::vector<std::pair<int, double>> pending;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            double p = regrowth_probability(r, c);
            if (p <= 0.0) continue;
            bool occupied = false;
            for (int i = 0; i < num_agents_; ++i)
                if (agent_active(i) && agent_pos_[i] == std::make_pair(r, c)) occupied = true;
            if (!occupied) pending.emplace_back(cell(r, c), p);
        }
    for (auto [idx, p] : pending)
        if (rng.uniform() < p) apple_[idx] = 1;
}

std::vector<double> HarvestEnv::observe(AgentId agent) const {
    // Channels: self, other agents, apples, out-of-bounds (incl. walls).
    constexpr int W = 2 * kViewRadius + 1;
    std::vector<double> obs(4 * W * W, 0.0);
    auto [ar, ac] = agent_pos_[agent];
    obs[kViewRadius * W + kViewRadius] = 1.0;
    for (int dr = -kViewRadius; dr <= kViewRadius; ++dr)
        for (int dc = -kViewRadius; dc <= kViewRadius; ++dc) {
            int r = ar + dr, c = ac + dc;
            int w = (dr + kViewRadius) * W + (dc + kViewRadius);
            if (!in_bounds(r, c) || terrain_[cell(r, c)] == '#') {
                obs[3 * W * W + w] = 1.0;
                continue;
            }
            if (apple_[cell(r, c)]) obs[2 * W * W + w] = 1.0;
            for (int j = 0; j < num_agents_; ++j)
                if (j != agent && agent_active(j) && agent_pos_[j] == std::make_pair(r, c))
                    obs[W * W + w] = 1.0;
        }
    return obs;
}

std::vector<std::vector<AgentId>> HarvestEnv::neighborhoods() const {
    std::vector<std::vector<AgentId>> out(num_agents_);
    for (int i = 0; i < num_agents_; ++i) {
        if (!agent_active(i)) continue;
        for (int j = 0; j < num_agents_; ++j) {
            if (j == i || !agent_active(j)) continue;
            int dr = std::abs(agent_pos_[i].first - agent_pos_[j].first);
            int dc = std::abs(agent_pos_[i].second - agent_pos_[j].second);
            if (dr <= kViewRadius && dc <= kViewRadius) out[i].push_back(j);
        }
    }
    return out;
}

int HarvestEnv::apple_count() const {
    int n = 0;
    for (char a : apple_) n += a != 0;
    return n;
}

int HarvestEnv::apple_spot_count() const {
    int n = 0;
    for (char t : terrain_) n += t == 'A';
    return n;
}

void HarvestEnv::set_apple(int row, int col, bool present) {
    if (terrain_[cell(row, col)] != 'A')
        throw std::invalid_argument("not an apple spot");
    apple_[cell(row, col)] = present;
}

}  // namespace pisim
