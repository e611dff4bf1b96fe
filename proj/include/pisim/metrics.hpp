#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pisim/rollout.hpp"

namespace pisim {

// One measurement in the long-format metrics stream. agent < 0 marks a
// system-level metric (the agent CSV column stays empty).
struct MetricsRow {
    int epoch = 0;
    std::uint64_t seed = 0;
    std::string metric;
    int agent = -1;
    double value = 0.0;
};

// Social welfare of one episode: sum of undiscounted environment rewards
// over all agents. Exchanged tokens are excluded by construction.
double episode_efficiency(const EpisodeRollout& rollout);

// Undiscounted environment return of one agent.
double episode_return(const EpisodeRollout& rollout, int agent);

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRow& row);
std::vector<MetricsRow> read_metrics_csv(const std::string& path);

struct SummaryRow {
    std::string metric;
    int agent = -1;
    int epoch = 0;
    double mean = 0.0;
    double ci95 = 0.0;
    int n = 0;  // seeds; ci95 is meaningful only for n >= 2
};

// Mean and normal-approximation 95% confidence interval per (metric, agent,
// epoch) across seeds.
std::vector<SummaryRow> summarize_rows(const std::vector<MetricsRow>& rows);

// Mean of a metric over the trailing `window` epochs (across seeds).
double trailing_mean(const std::vector<MetricsRow>& rows, const std::string& metric,
                     int window);

}  // namespace pisim
