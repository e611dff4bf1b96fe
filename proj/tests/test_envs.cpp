#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <utility>
#include <vector>

#include "pisim/env_coin.hpp"
#include "pisim/env_harvest.hpp"
#include "pisim/env_ipd.hpp"

using namespace pisim;

// ---------------------------------------------------------------------------
// Iterated Prisoner's Dilemma

TEST_CASE("ipd payoff matrix") {
    IpdEnv env;
    Rng rng(1);

    auto play = [&](int a0, int a1) {
        env.reset(rng);
        std::vector<int> joint{a0, a1};
        return env.step(joint, rng);
    };

    auto cc = play(IpdEnv::kCooperate, IpdEnv::kCooperate);
    CHECK(cc[0] == -1.0);
    CHECK(cc[1] == -1.0);
    auto cd = play(IpdEnv::kCooperate, IpdEnv::kDefect);
    CHECK(cd[0] == -3.0);
    CHECK(cd[1] == 0.0);
    auto dc = play(IpdEnv::kDefect, IpdEnv::kCooperate);
    CHECK(dc[0] == 0.0);
    CHECK(dc[1] == -3.0);
    auto dd = play(IpdEnv::kDefect, IpdEnv::kDefect);
    CHECK(dd[0] == -2.0);
    CHECK(dd[1] == -2.0);
}

TEST_CASE("ipd observations mirror the last joint action") {
    IpdEnv env;
    Rng rng(2);
    env.reset(rng);
    CHECK(env.observe(0) == std::vector<double>{0.0, 0.0});
    CHECK(env.observe(1) == std::vector<double>{0.0, 0.0});

    std::vector<int> joint{IpdEnv::kCooperate, IpdEnv::kDefect};
    env.step(joint, rng);
    CHECK(env.observe(0) == std::vector<double>{0.0, 1.0});
    CHECK(env.observe(1) == std::vector<double>{1.0, 0.0});

    CHECK(env.num_agents() == 2);
    CHECK(env.num_actions() == 2);
    CHECK(env.obs_dim() == 2);
    CHECK(env.noop_action() == IpdEnv::kCooperate);
    auto nbhd = env.neighborhoods();
    CHECK(nbhd[0] == std::vector<AgentId>{1});
    CHECK(nbhd[1] == std::vector<AgentId>{0});
}

// ---------------------------------------------------------------------------
// Coin Game

namespace {

// Brute-force reward oracle, written independently of the environment:
// simultaneous moves with out-of-grid moves discarded; every agent on the
// coin cell collects (+1 * scale); the owner loses 2 * scale for each
// non-owner collector.
std::vector<double> coin_oracle(int grid, double scale,
                                std::vector<std::pair<int, int>> pos,
                                std::pair<int, int> coin, int owner,
                                const std::vector<int>& joint) {
    const int n = static_cast<int>(pos.size());
    for (int i = 0; i < n; ++i) {
        int r = pos[i].first, c = pos[i].second;
        if (joint[i] == CoinGameEnv::kLeft) c -= 1;
        if (joint[i] == CoinGameEnv::kRight) c += 1;
        if (joint[i] == CoinGameEnv::kUp) r -= 1;
        if (joint[i] == CoinGameEnv::kDown) r += 1;
        if (r >= 0 && r < grid && c >= 0 && c < grid) pos[i] = {r, c};
    }
    std::vector<double> rewards(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (pos[i] != coin) continue;
        rewards[i] += scale;
        if (i != owner) rewards[owner] -= 2.0 * scale;
    }
    return rewards;
}

}  // namespace

TEST_CASE("coin game grid sizes and observation encoding") {
    for (auto [agents, grid] : {std::pair{2, 3}, {4, 5}, {6, 7}}) {
        CoinGameEnv env(agents);
        CHECK(env.grid_size() == grid);
        CHECK(env.obs_dim() == grid * grid * 4);
        CHECK(env.num_actions() == 4);

        Rng rng(agents);
        env.reset(rng);
        for (int i = 0; i < agents; ++i) {
            auto obs = env.observe(i);
            const int cells = grid * grid;
            double self = 0.0, others = 0.0, own_coin = 0.0, foreign_coin = 0.0;
            for (int c = 0; c < cells; ++c) {
                self += obs[c];
                others += obs[cells + c];
                own_coin += obs[2 * cells + c];
                foreign_coin += obs[3 * cells + c];
            }
            CHECK(self == 1.0);  // exactly one self cell
            CHECK(own_coin + foreign_coin == 1.0);
            CHECK((env.coin_owner() == i ? own_coin : foreign_coin) == 1.0);
            CHECK(others >= 1.0);  // at least one other agent somewhere
        }
    }
    CHECK_THROWS_AS(CoinGameEnv(3), std::invalid_argument);
}

TEST_CASE("coin game exhaustive joint actions match the oracle") {
    const std::vector<std::pair<int, int>> start{{1, 0}, {1, 2}};
    const std::pair<int, int> coin{1, 1};

    for (double scale : {1.0, 0.1}) {
        for (int owner : {0, 1}) {
            for (int a0 = 0; a0 < 4; ++a0)
                for (int a1 = 0; a1 < 4; ++a1) {
                    CoinGameEnv env(2, scale);
                    Rng rng(7);
                    env.reset(rng);
                    env.set_state(start, coin, owner);
                    std::vector<int> joint{a0, a1};
                    auto got = env.step(joint, rng);
                    auto want = coin_oracle(3, scale, start, coin, owner, joint);
                    CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-15));
                    CHECK(got[1] == doctest::Approx(want[1]).epsilon(1e-15));
                }
        }
    }
}

TEST_CASE("coin game simultaneous collection pays +1/-2 net") {
    CoinGameEnv env(2);
    Rng rng(8);
    env.reset(rng);
    // Both agents step onto the coin; agent 0 owns it.
    env.set_state({{1, 0}, {1, 2}}, {1, 1}, 0);
    std::vector<int> joint{CoinGameEnv::kRight, CoinGameEnv::kLeft};
    auto r = env.step(joint, rng);
    CHECK(r[0] == -1.0);  // +1 collect, -2 for the foreign collection
    CHECK(r[1] == 1.0);
    auto stats = env.episode_stats();
    CHECK(stats.at("occ") == 1.0);
    CHECK(stats.at("tcc") == 2.0);
}

TEST_CASE("coin game collection counters and respawn") {
    CoinGameEnv env(2);
    Rng rng(9);
    env.reset(rng);
    env.set_state({{0, 0}, {2, 2}}, {0, 1}, 1);
    std::vector<int> joint{CoinGameEnv::kRight, CoinGameEnv::kStay};
    auto r = env.step(joint, rng);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == -2.0);
    auto stats = env.episode_stats();
    CHECK(stats.at("occ") == 0.0);
    CHECK(stats.at("tcc") == 1.0);

    // A new coin exists and is not under any agent.
    auto coin = env.coin_position();
    CHECK(coin != env.agent_position(0));
    CHECK(coin != env.agent_position(1));
}

TEST_CASE("coin game off-grid moves are discarded") {
    CoinGameEnv env(2);
    Rng rng(10);
    env.reset(rng);
    env.set_state({{0, 0}, {2, 2}}, {1, 1}, 0);
    std::vector<int> joint{CoinGameEnv::kUp, CoinGameEnv::kDown};
    env.step(joint, rng);
    CHECK(env.agent_position(0) == std::pair{0, 0});
    CHECK(env.agent_position(1) == std::pair{2, 2});
}

TEST_CASE("rescaled coin game is an exact 0.1 scaling of the same trajectory") {
    CoinGameEnv full(2, 1.0);
    CoinGameEnv rescaled(2, 0.1);
    Rng rng_a(11), rng_b(11), act(12);
    full.reset(rng_a);
    rescaled.reset(rng_b);
    for (int t = 0; t < 150; ++t) {
        std::vector<int> joint{act.uniform_int(4), act.uniform_int(4)};
        auto ra = full.step(joint, rng_a);
        auto rb = rescaled.step(joint, rng_b);
        for (int i = 0; i < 2; ++i) CHECK(rb[i] == doctest::Approx(0.1 * ra[i]).epsilon(1e-15));
    }
    CHECK(full.episode_stats() == rescaled.episode_stats());
}

// ---------------------------------------------------------------------------
// Harvest

TEST_CASE("harvest map and dimensions") {
    HarvestEnv env;
    CHECK(env.rows() == 9);
    CHECK(env.cols() == 25);
    CHECK(env.num_agents() == 6);
    CHECK(env.num_actions() == 9);
    CHECK(env.obs_dim() == 7 * 7 * 4);
    CHECK(env.time_limit() == 250);
    CHECK(env.noop_action() == HarvestEnv::kNoop);
    CHECK(env.apple_spot_count() == 30);

    Rng rng(21);
    env.reset(rng);
    CHECK(env.apple_count() == 30);  // all spots start grown

    CHECK_THROWS_AS(env.load_map("..\n...\n"), std::invalid_argument);
    CHECK_THROWS_AS(env.load_map("..X\n"), std::invalid_argument);
    CHECK_THROWS_AS(env.load_map(""), std::invalid_argument);
}

TEST_CASE("harvest rewards: collection and time penalty") {
    HarvestEnv env(1);
    Rng rng(22);
    env.reset(rng);
    env.set_agent_position(0, 1, 3);  // left of the apple at (1,4)
    REQUIRE(env.apple_at(1, 4));

    std::vector<int> joint{HarvestEnv::kMoveRight};
    auto r = env.step(joint, rng);
    CHECK(r[0] == doctest::Approx(1.0 - 0.1));
    CHECK_FALSE(env.apple_at(1, 4));
    CHECK(env.episode_stats().at("apples") == 1.0);

    joint[0] = HarvestEnv::kNoop;
    r = env.step(joint, rng);
    CHECK(r[0] == doctest::Approx(-0.1));
}

TEST_CASE("harvest tagging removes an agent for 25 steps") {
    HarvestEnv env(2);
    Rng rng(23);
    env.reset(rng);
    env.set_agent_position(0, 4, 10);
    env.set_agent_position(1, 4, 12);  // within the 7x7 window, to the right

    std::vector<int> joint{HarvestEnv::kTagRight, HarvestEnv::kNoop};
    auto r = env.step(joint, rng);
    CHECK_FALSE(env.agent_active(1));
    CHECK(r[0] == doctest::Approx(-0.1));
    CHECK(r[1] == doctest::Approx(-0.1));  // active at the start of the step

    // Inactive for exactly 25 subsequent steps: no penalty, no actions.
    joint = {HarvestEnv::kNoop, HarvestEnv::kNoop};
    for (int t = 0; t < 25; ++t) {
        CHECK_FALSE(env.agent_active(1));
        r = env.step(joint, rng);
        CHECK(r[1] == 0.0);
    }
    CHECK(env.agent_active(1));
    r = env.step(joint, rng);
    CHECK(r[1] == doctest::Approx(-0.1));
}

TEST_CASE("harvest tag beam is directional and range-limited") {
    HarvestEnv env(2);
    Rng rng(24);
    env.reset(rng);
    env.set_agent_position(0, 4, 10);
    env.set_agent_position(1, 4, 12);

    // Wrong direction: no tag.
    std::vector<int> joint{HarvestEnv::kTagLeft, HarvestEnv::kNoop};
    env.step(joint, rng);
    CHECK(env.agent_active(1));

    // Out of the 7x7 window: no tag.
    env.set_agent_position(1, 4, 14);
    joint[0] = HarvestEnv::kTagRight;
    env.step(joint, rng);
    CHECK(env.agent_active(1));
}

TEST_CASE("harvest regrowth probability tiers") {
    HarvestEnv env(1);
    Rng rng(25);
    env.reset(rng);

    // (2,4) is the center of a 5-apple cluster; empty it and count tiers.
    REQUIRE(env.apple_at(2, 4));
    env.set_apple(2, 4, false);
    // 4 apples within radius 2 of (2,4): (1,4),(2,3),(2,5),(3,4) -> mid tier.
    CHECK(env.regrowth_probability(2, 4) == doctest::Approx(0.05));

    // Remove two more cluster apples: 2 nearby -> low tier.
    env.set_apple(2, 3, false);
    env.set_apple(2, 5, false);
    CHECK(env.regrowth_probability(2, 4) == doctest::Approx(0.01));

    // Deplete the whole cluster: zero nearby -> never regrows.
    env.set_apple(1, 4, false);
    env.set_apple(3, 4, false);
    CHECK(env.regrowth_probability(2, 4) == 0.0);

    // A grown spot or a plain cell has no regrowth probability.
    CHECK(env.regrowth_probability(1, 12) == 0.0);
    CHECK(env.regrowth_probability(0, 0) == 0.0);
}

TEST_CASE("harvest regrowth rate matches its probability empirically") {
    HarvestEnv env(1);
    Rng rng(26);
    env.reset(rng);
    env.load_map("A.A\n");  // two spots two cells apart (within radius 2)
    env.set_agent_position(0, 0, 1);
    env.set_apple(0, 0, true);

    REQUIRE(env.regrowth_probability(0, 2) == doctest::Approx(0.01));

    const int trials = 100000;
    int grown = 0;
    for (int t = 0; t < trials; ++t) {
        env.set_apple(0, 2, false);
        env.regrow(rng);
        grown += env.apple_at(0, 2);
    }
    double rate = static_cast<double>(grown) / trials;
    CHECK(rate == doctest::Approx(0.01).epsilon(0.2));  // 0.01 +/- 0.002
}

TEST_CASE("harvest regrowth skips occupied cells") {
    HarvestEnv env(1);
    Rng rng(27);
    env.reset(rng);
    env.load_map("A.A\n");
    env.set_apple(0, 0, true);
    env.set_apple(0, 2, false);
    env.set_agent_position(0, 0, 2);  // standing on the empty spot
    for (int t = 0; t < 2000; ++t) env.regrow(rng);
    CHECK_FALSE(env.apple_at(0, 2));
}

TEST_CASE("harvest neighborhoods are symmetric and window-bound") {
    HarvestEnv env(3);
    Rng rng(28);
    env.reset(rng);
    env.set_agent_position(0, 4, 5);
    env.set_agent_position(1, 4, 8);   // 3 columns away: neighbor
    env.set_agent_position(2, 4, 16);  // far: not a neighbor of 0

    auto nbhd = env.neighborhoods();
    CHECK(nbhd[0] == std::vector<AgentId>{1});
    CHECK(nbhd[1] == std::vector<AgentId>{0});
    CHECK(nbhd[2].empty());

    // Tagged agents drop out of every neighborhood.
    env.tag_agent(1);
    nbhd = env.neighborhoods();
    CHECK(nbhd[0].empty());
    CHECK(nbhd[1].empty());
}

TEST_CASE("harvest observation window marks out-of-bounds cells") {
    HarvestEnv env(1);
    Rng rng(29);
    env.reset(rng);
    env.set_agent_position(0, 0, 0);  // corner: rows/cols above and left are OOB
    auto obs = env.observe(0);
    const int W = 7, C = W * W;
    // Self channel: exactly the center cell.
    CHECK(obs[3 * W + 3] == 1.0);
    int oob = 0;
    for (int i = 0; i < C; ++i) oob += obs[3 * C + i] == 1.0;
    // 7x7 window at (0,0): rows -3..-1 (21 cells) plus cols -3..-1 of rows 0..3
    // (12 cells) are out of bounds.
    CHECK(oob == 33);
}

TEST_CASE("harvest apple invariants under random play") {
    HarvestEnv env(6);
    Rng rng(30), act(31);
    env.reset(rng);
    while (!env.done()) {
        std::vector<int> joint(6);
        for (auto& a : joint) a = act.uniform_int(9);
        env.step(joint, rng);
        CHECK(env.apple_count() <= env.apple_spot_count());
        CHECK(env.apple_count() >= 0);
    }
    CHECK(env.step_count() == 250);
}
