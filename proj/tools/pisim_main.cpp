// pisim: peer-incentivization social-dilemma experiment driver.
//
//   pisim run       --config cfg.json [overrides] --out DIR
//   pisim sweep     --config cfg.json --grid "0,0.5,1" --out DIR
//   pisim summarize --in DIR --out summary.csv

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pisim/metrics.hpp"
#include "pisim/runner.hpp"

namespace fs = std::filesystem;

namespace {

pisim::RunConfig load_base(const std::string& config_path) {
    if (config_path.empty()) return {};
    return pisim::load_config_file(config_path);
}

std::vector<double> parse_token_list(const std::string& spec) {
    std::vector<double> out;
    std::istringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    return out;
}

int cmd_summarize(const std::string& in_dir, const std::string& out_file) {
    std::vector<pisim::MetricsRow> rows;
    for (const auto& entry : fs::recursive_directory_iterator(in_dir)) {
        if (entry.is_regular_file() && entry.path().filename() == "metrics.csv") {
            auto file_rows = pisim::read_metrics_csv(entry.path().string());
            rows.insert(rows.end(), file_rows.begin(), file_rows.end());
        }
    }
    if (rows.empty()) {
        std::cerr << "no metrics.csv found under " << in_dir << "\n";
        return 1;
    }
    auto summary = pisim::summarize_rows(rows);
    std::ofstream out(out_file);
    if (!out) {
        std::cerr << "cannot write " << out_file << "\n";
        return 1;
    }
    out << "metric,agent,epoch,mean,ci95,n\n";
    for (const auto& s : summary) {
        out << s.metric << ',';
        if (s.agent >= 0) out << s.agent;
        out << ',' << s.epoch << ',' << s.mean << ',';
        if (s.n >= 2) out << s.ci95;
        out << ',' << s.n << '\n';
    }

    // Final averages, last epoch and trailing-100 window.
    std::vector<std::string> metrics;
    for (const auto& row : rows) {
        bool seen = false;
        for (const auto& m : metrics) seen |= m == row.metric;
        if (!seen) metrics.push_back(row.metric);
    }
    std::cout << "metric            last_epoch   trailing_100\n";
    for (const auto& m : metrics) {
        std::cout << m;
        for (std::size_t k = m.size(); k < 18; ++k) std::cout << ' ';
        std::cout << pisim::trailing_mean(rows, m, 1) << "   "
                  << pisim::trailing_mean(rows, m, 100) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized peer-incentivization MARL simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, grid_spec, in_dir, out_file;
    std::string env_name, protocol, tokens_spec;
    double token = -1.0;
    int epochs = -1, episodes = -1, seeds = -1;

    auto* run = app.add_subcommand("run", "Run one experiment configuration");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--env", env_name, "Environment (ipd|coin-2|coin-4|coin-6|rcoin-2|harvest)");
    run->add_option("--protocol", protocol, "Protocol name");
    run->add_option("--token", token, "Shared MATE token");
    run->add_option("--tokens", tokens_spec, "Per-agent tokens, comma-separated");
    run->add_option("--epochs", epochs, "Training epochs");
    run->add_option("--episodes-per-epoch", episodes, "Episodes per epoch");
    run->add_option("--seeds", seeds, "Number of seeds (0..N-1)");
    run->add_option("--out", out_dir, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Token sweep over a grid");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--grid", grid_spec,
                      "Grid points: scalars '0,0.5,1' or vectors '1:2,2:2'")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto* summarize = app.add_subcommand("summarize", "Aggregate metrics across seeds");
    summarize->add_option("--in", in_dir, "Directory containing metrics.csv files")->required();
    summarize->add_option("--out", out_file, "Summary CSV output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            pisim::RunConfig cfg = load_base(config_path);
            if (!env_name.empty()) cfg.env = env_name;
            if (!protocol.empty()) cfg.protocol = protocol;
            if (token >= 0.0) cfg.token = token;
            if (!tokens_spec.empty()) cfg.tokens = parse_token_list(tokens_spec);
            if (epochs >= 0) cfg.epochs = epochs;
            if (episodes >= 0) cfg.episodes_per_epoch = episodes;
            if (seeds >= 0) cfg.seeds = seeds;
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            auto result = pisim::run_experiment(cfg);
            std::cout << result.manifest.at("final_metrics").dump(2) << "\n";
        } else if (sweep->parsed()) {
            pisim::RunConfig cfg = load_base(config_path);
            pisim::token_sweep(cfg, pisim::parse_grid(grid_spec), out_dir);
            std::cout << "sweep results written to " << out_dir << "/sweep_results.csv\n";
        } else if (summarize->parsed()) {
            return cmd_summarize(in_dir, out_file);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
