#include "pisim/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pisim/game.hpp"
#include "pisim/mediate.hpp"

#ifndef PISIM_VERSION
#define PISIM_VERSION "0.1.0"
#endif

namespace pisim {
namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    return out;
}

void run_one_seed(const RunConfig& cfg, std::uint64_t seed, std::vector<MetricsRow>& rows,
                  std::ostream* csv, std::ostream* trace) {
    RngFactory streams(seed);
    auto env = make_env(cfg);
    auto protocol = make_protocol(cfg, *env, trace);

    const int n = env->num_agents();
    LearnerConfig lcfg;
    lcfg.learning_rate = cfg.learning_rate;
    lcfg.clip_norm = cfg.clip_norm;
    lcfg.gamma = cfg.gamma > 0.0 ? cfg.gamma : default_gamma(cfg.env);
    lcfg.entropy_coef = cfg.entropy_coef;

    std::vector<Learner> agents;
    agents.reserve(n);
    for (int i = 0; i < n; ++i)
        agents.emplace_back(env->obs_dim(), env->num_actions() + protocol->extra_actions(),
                            lcfg, streams.stream("init", i), streams.stream("agent", i));

    Rng env_rng = streams.stream("env");
    Rng protocol_rng = streams.stream("protocol");

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double occ = 0.0, tcc = 0.0;
        bool has_coins = false;
        auto on_episode = [&](const EpisodeRollout&) {
            auto stats = env->episode_stats();
            if (auto it = stats.find("occ"); it != stats.end()) {
                occ += it->second;
                tcc += stats.at("tcc");
                has_coins = true;
            }
        };
        auto rollouts = run_epoch(*env, agents, *protocol, cfg.episodes_per_epoch, env_rng,
                                  protocol_rng, on_episode);

        std::vector<MetricsRow> epoch_rows;
        double u = 0.0;
        for (const auto& r : rollouts) u += episode_efficiency(r);
        epoch_rows.push_back({epoch, seed, "efficiency", -1, u / rollouts.size()});

        for (int i = 0; i < n; ++i) {
            double g = 0.0;
            for (const auto& r : rollouts) g += episode_return(r, i);
            epoch_rows.push_back({epoch, seed, "return", i, g / rollouts.size()});
        }

        if (has_coins && tcc > 0.0)
            epoch_rows.push_back({epoch, seed, "own_coins", -1, occ / tcc});

        auto tokens = protocol->tokens();
        for (int i = 0; i < static_cast<int>(tokens.size()); ++i)
            epoch_rows.push_back({epoch, seed, "token", i, tokens[i]});

        for (auto& row : epoch_rows) {
            if (csv) write_metrics_row(*csv, row);
            rows.push_back(std::move(row));
        }
        if (csv) csv->flush();
    }
}

}  // namespace

std::string SweepPoint::label() const {
    std::ostringstream ss;
    ss << (centralized() ? "token" : "tokens");
    for (double t : tokens) ss << "_" << t;
    return ss.str();
}

RunResult run_experiment(const RunConfig& cfg) {
    RunResult result;

    std::ofstream csv, trace;
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        csv = open_output(fs::path(cfg.out_dir) / "metrics.csv");
        write_metrics_header(csv);
        if (cfg.trace_consensus)
            trace = open_output(fs::path(cfg.out_dir) / "consensus_trace.jsonl");
    }

    for (std::uint64_t seed : cfg.effective_seeds())
        run_one_seed(cfg, seed, result.rows, csv.is_open() ? &csv : nullptr,
                     trace.is_open() ? &trace : nullptr);

    // Final metrics: last-epoch and trailing-100-epoch means across seeds.
    nlohmann::json finals;
    std::vector<std::string> metric_names;
    for (const auto& row : result.rows) {
        bool seen = false;
        for (const auto& m : metric_names) seen |= m == row.metric;
        if (!seen) metric_names.push_back(row.metric);
    }
    for (const auto& m : metric_names) {
        finals[m] = {{"last_epoch", trailing_mean(result.rows, m, 1)},
                     {"trailing_100", trailing_mean(result.rows, m, 100)}};
    }

    result.manifest = {{"config", config_to_json(cfg)},
                       {"config_hash", config_hash(cfg)},
                       {"version", PISIM_VERSION},
                       {"seeds", cfg.effective_seeds()},
                       {"csv_schema", "epoch,seed,metric,agent,value"},
                       {"final_metrics", finals}};

    if (!cfg.out_dir.empty()) {
        auto mf = open_output(fs::path(cfg.out_dir) / "manifest.json");
        mf << result.manifest.dump(2) << "\n";
    }
    return result;
}

std::vector<SweepPoint> parse_grid(const std::string& spec) {
    std::vector<SweepPoint> grid;
    std::istringstream ss(spec);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        if (entry.empty()) continue;
        SweepPoint pt;
        std::istringstream es(entry);
        std::string part;
        while (std::getline(es, part, ':')) pt.tokens.push_back(std::stod(part));
        grid.push_back(std::move(pt));
    }
    if (grid.empty()) throw std::invalid_argument("empty sweep grid");
    return grid;
}

std::vector<MetricsRow> token_sweep(const RunConfig& base, const std::vector<SweepPoint>& grid,
                                    const std::string& out_dir) {
    for (const auto& pt : grid) {
        if (pt.centralized() && base.protocol != "mate")
            throw std::invalid_argument("scalar grid points require protocol 'mate'");
        if (!pt.centralized() && base.protocol != "mate-decentralized")
            throw std::invalid_argument(
                "vector grid points require protocol 'mate-decentralized'");
    }

    fs::create_directories(out_dir);
    auto table = open_output(fs::path(out_dir) / "sweep_results.csv");
    table << "point,metric,seed,last_epoch,trailing_100\n";

    std::vector<MetricsRow> all_rows;
    for (const auto& pt : grid) {
        RunConfig cfg = base;
        if (pt.centralized())
            cfg.token = pt.tokens[0];
        else
            cfg.tokens = pt.tokens;
        cfg.out_dir = (fs::path(out_dir) / pt.label()).string();
        RunResult res = run_experiment(cfg);

        for (std::uint64_t seed : cfg.effective_seeds()) {
            std::vector<MetricsRow> seed_rows;
            for (const auto& row : res.rows)
                if (row.seed == seed) seed_rows.push_back(row);
            for (const auto& metric : {std::string("efficiency"), std::string("own_coins")}) {
                bool present = false;
                for (const auto& row : seed_rows) present |= row.metric == metric;
                if (!present) continue;
                table << pt.label() << ',' << metric << ',' << seed << ','
                      << trailing_mean(seed_rows, metric, 1) << ','
                      << trailing_mean(seed_rows, metric, 100) << '\n';
            }
        }
        for (auto& row : res.rows) all_rows.push_back(std::move(row));
    }
    return all_rows;
}

}  // namespace pisim
