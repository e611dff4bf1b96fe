#include "pisim/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pisim {

void save_checkpoint(const std::string& path, const std::vector<Learner>& agents,
                     std::uint64_t config_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);

    nlohmann::json header = {{"format", "pisim-checkpoint"},
                             {"version", 1},
                             {"config_hash", config_hash},
                             {"agents", nlohmann::json::array()}};
    for (const auto& agent : agents)
        header["agents"].push_back({{"obs_dim", agent.net().obs_dim()},
                                    {"num_actions", agent.net().num_actions()},
                                    {"num_params", agent.net().num_params()}});
    out << header.dump() << "\n";
    for (const auto& agent : agents) {
        auto params = agent.net().params();
        out.write(reinterpret_cast<const char*>(params.data()),
                  static_cast<std::streamsize>(params.size() * sizeof(double)));
    }
}

void load_checkpoint(const std::string& path, std::vector<Learner>& agents,
                     std::uint64_t config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
    std::string header_line;
    std::getline(in, header_line);
    nlohmann::json header = nlohmann::json::parse(header_line);
    if (header.at("format") != "pisim-checkpoint" || header.at("version") != 1)
        throw std::runtime_error("unrecognized checkpoint format");
    if (header.at("config_hash").get<std::uint64_t>() != config_hash)
        throw std::runtime_error("checkpoint config hash mismatch");
    if (header.at("agents").size() != agents.size())
        throw std::runtime_error("checkpoint agent count mismatch");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& meta = header.at("agents")[i];
        auto params = agents[i].net().params();
        if (meta.at("obs_dim") != agents[i].net().obs_dim() ||
            meta.at("num_actions") != agents[i].net().num_actions() ||
            meta.at("num_params") != params.size())
            throw std::runtime_error("checkpoint shape mismatch");
        in.read(reinterpret_cast<char*>(params.data()),
                static_cast<std::streamsize>(params.size() * sizeof(double)));
        if (!in) throw std::runtime_error("truncated checkpoint");
    }
}

}  // namespace pisim
