#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "pisim/env.hpp"
#include "pisim/protocol.hpp"

namespace pisim {

// One experiment configuration. JSON fields use the same names; CLI flags
// override file values.
struct RunConfig {
    std::string env = "coin-2";  // ipd | coin-2 | coin-4 | coin-6 | rcoin-2 | harvest
    std::string protocol = "naive";
    // naive | mate | mate-decentralized | automate | mediate-i | mediate-s |
    // gift-zerosum | gift-budget

    double token = 1.0;                 // mate
    std::vector<double> tokens;         // mate-decentralized, one per agent

    int epochs = 5000;
    int episodes_per_epoch = 10;
    int seeds = 1;
    std::vector<std::uint64_t> seed_list;  // explicit; else 0..seeds-1

    double gift_value = 1.0;
    double gift_budget = 15.0;

    double mediate_alpha = 0.1;
    int consensus_iterations = 0;  // 0 => agent count
    bool trace_consensus = false;

    double entropy_coef = 0.0;
    double learning_rate = 1e-3;
    double clip_norm = 1.0;

    int time_limit = 0;   // 0 => env default
    double gamma = 0.0;   // 0 => env default
    std::string harvest_map_path;  // empty => built-in map

    std::string out_dir;  // empty => no files written

    std::vector<std::uint64_t> effective_seeds() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);
std::uint64_t config_hash(const RunConfig& cfg);

int env_agent_count(const std::string& env_name);
double default_gamma(const std::string& env_name);
std::unique_ptr<Environment> make_env(const RunConfig& cfg);
std::unique_ptr<Protocol> make_protocol(const RunConfig& cfg, const Environment& env,
                                        std::ostream* consensus_trace = nullptr);

}  // namespace pisim
