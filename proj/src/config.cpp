#include "pisim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pisim/env_coin.hpp"
#include "pisim/env_harvest.hpp"
#include "pisim/env_ipd.hpp"
#include "pisim/gifting.hpp"
#include "pisim/mate.hpp"
#include "pisim/mediate.hpp"

namespace pisim {

std::vector<std::uint64_t> RunConfig::effective_seeds() const {
    if (!seed_list.empty()) return seed_list;
    std::vector<std::uint64_t> out(seeds);
    for (int s = 0; s < seeds; ++s) out[s] = static_cast<std::uint64_t>(s);
    return out;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("env", cfg.env);
    get("protocol", cfg.protocol);
    get("token", cfg.token);
    get("tokens", cfg.tokens);
    get("epochs", cfg.epochs);
    get("episodes_per_epoch", cfg.episodes_per_epoch);
    get("seeds", cfg.seeds);
    get("seed_list", cfg.seed_list);
    get("gift_value", cfg.gift_value);
    get("gift_budget", cfg.gift_budget);
    get("mediate_alpha", cfg.mediate_alpha);
    get("consensus_iterations", cfg.consensus_iterations);
    get("trace_consensus", cfg.trace_consensus);
    get("entropy_coef", cfg.entropy_coef);
    get("learning_rate", cfg.learning_rate);
    get("clip_norm", cfg.clip_norm);
    get("time_limit", cfg.time_limit);
    get("gamma", cfg.gamma);
    get("harvest_map_path", cfg.harvest_map_path);
    get("out_dir", cfg.out_dir);
    return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    return nlohmann::json{{"env", cfg.env},
                          {"protocol", cfg.protocol},
                          {"token", cfg.token},
                          {"tokens", cfg.tokens},
                          {"epochs", cfg.epochs},
                          {"episodes_per_epoch", cfg.episodes_per_epoch},
                          {"seeds", cfg.seeds},
                          {"seed_list", cfg.seed_list},
                          {"gift_value", cfg.gift_value},
                          {"gift_budget", cfg.gift_budget},
                          {"mediate_alpha", cfg.mediate_alpha},
                          {"consensus_iterations", cfg.consensus_iterations},
                          {"trace_consensus", cfg.trace_consensus},
                          {"entropy_coef", cfg.entropy_coef},
                          {"learning_rate", cfg.learning_rate},
                          {"clip_norm", cfg.clip_norm},
                          {"time_limit", cfg.time_limit},
                          {"gamma", cfg.gamma},
                          {"harvest_map_path", cfg.harvest_map_path},
                          {"out_dir", cfg.out_dir}};
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

std::uint64_t config_hash(const RunConfig& cfg) {
    std::string canon = config_to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : canon) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

int env_agent_count(const std::string& env_name) {
    if (env_name == "ipd" || env_name == "coin-2" || env_name == "rcoin-2") return 2;
    if (env_name == "coin-4") return 4;
    if (env_name == "coin-6" || env_name == "harvest") return 6;
    throw std::invalid_argument("unknown environment: " + env_name);
}

double default_gamma(const std::string& env_name) {
    return env_name == "harvest" ? 0.99 : 0.95;
}

std::unique_ptr<Environment> make_env(const RunConfig& cfg) {
    const int tl = cfg.time_limit;
    if (cfg.env == "ipd") return std::make_unique<IpdEnv>(tl > 0 ? tl : 150);
    if (cfg.env == "coin-2") return std::make_unique<CoinGameEnv>(2, 1.0, tl > 0 ? tl : 150);
    if (cfg.env == "rcoin-2") return std::make_unique<CoinGameEnv>(2, 0.1, tl > 0 ? tl : 150);
    if (cfg.env == "coin-4") return std::make_unique<CoinGameEnv>(4, 1.0, tl > 0 ? tl : 150);
    if (cfg.env == "coin-6") return std::make_unique<CoinGameEnv>(6, 1.0, tl > 0 ? tl : 150);
    if (cfg.env == "harvest") {
        auto env = std::make_unique<HarvestEnv>(6, tl > 0 ? tl : 250);
        if (!cfg.harvest_map_path.empty()) {
            std::ifstream in(cfg.harvest_map_path);
            if (!in) throw std::runtime_error("cannot open map: " + cfg.harvest_map_path);
            std::stringstream ss;
            ss << in.rdbuf();
            env->load_map(ss.str());
        }
        return env;
    }
    throw std::invalid_argument("unknown environment: " + cfg.env);
}

std::unique_ptr<Protocol> make_protocol(const RunConfig& cfg, const Environment& env,
                                        std::ostream* consensus_trace) {
    const int n = env.num_agents();
    if (cfg.protocol == "naive") return std::make_unique<NaiveProtocol>();
    if (cfg.protocol == "mate") return std::make_unique<MateProtocol>(n, cfg.token);
    if (cfg.protocol == "mate-decentralized") {
        if (static_cast<int>(cfg.tokens.size()) != n)
            throw std::invalid_argument("mate-decentralized needs one token per agent");
        return std::make_unique<MateProtocol>(cfg.tokens);
    }
    if (cfg.protocol == "automate")
        return std::make_unique<MediateProtocol>(n, MediateVariant::kAutomate,
                                                 cfg.mediate_alpha, cfg.consensus_iterations);
    if (cfg.protocol == "mediate-i")
        return std::make_unique<MediateProtocol>(n, MediateVariant::kIsolated,
                                                 cfg.mediate_alpha, cfg.consensus_iterations,
                                                 consensus_trace);
    if (cfg.protocol == "mediate-s")
        return std::make_unique<MediateProtocol>(n, MediateVariant::kSynchronized,
                                                 cfg.mediate_alpha, cfg.consensus_iterations,
                                                 consensus_trace);
    if (cfg.protocol == "gift-zerosum")
        return std::make_unique<GiftingProtocol>(n, env.num_actions(), GiftingMode::kZeroSum,
                                                 cfg.gift_value, cfg.gift_budget);
    if (cfg.protocol == "gift-budget")
        return std::make_unique<GiftingProtocol>(n, env.num_actions(),
                                                 GiftingMode::kFixedBudget, cfg.gift_value,
                                                 cfg.gift_budget);
    throw std::invalid_argument("unknown protocol: " + cfg.protocol);
}

}  // namespace pisim
