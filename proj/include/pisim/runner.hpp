#pragma once

#include "pisim/config.hpp"
#include "pisim/metrics.hpp"

namespace pisim {

struct RunResult {
    std::vector<MetricsRow> rows;
    nlohmann::json manifest;
};

// Runs every seed of the configuration. If out_dir is set, writes
// metrics.csv incrementally, manifest.json at completion and (optionally)
// consensus_trace.jsonl; the output directory is validated before any
// simulation starts.
RunResult run_experiment(const RunConfig& cfg);

// One token-sweep grid point: a shared token or one token per agent.
struct SweepPoint {
    std::vector<double> tokens;  // size 1 = centralized
    bool centralized() const { return tokens.size() == 1; }
    std::string label() const;
};

// Grid spec: comma-separated points, each a scalar ("0.5") or a
// colon-joined per-agent vector ("1:2").
std::vector<SweepPoint> parse_grid(const std::string& spec);

// Runs the base configuration once per grid point (x seeds), writing each
// run under <out_dir>/<point label>/ plus a final-performance table
// sweep_results.csv. The base protocol must be mate (scalar points) or
// mate-decentralized (vector points).
std::vector<MetricsRow> token_sweep(const RunConfig& base,
                                    const std::vector<SweepPoint>& grid,
                                    const std::string& out_dir);

}  // namespace pisim
