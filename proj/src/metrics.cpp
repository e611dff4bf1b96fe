#include "pisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pisim {

double episode_efficiency(const EpisodeRollout& rollout) {
    double u = 0.0;
    for (const auto& steps : rollout.agents)
        for (const auto& step : steps) u += step.env_reward;
    return u;
}

double episode_return(const EpisodeRollout& rollout, int agent) {
    double g = 0.0;
    for (const auto& step : rollout.agents[agent]) g += step.env_reward;
    return g;
}

void write_metrics_header(std::ostream& out) { out << "epoch,seed,metric,agent,value\n"; }

void write_metrics_row(std::ostream& out, const MetricsRow& row) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", row.value);
    out << row.epoch << ',' << row.seed << ',' << row.metric << ',';
    if (row.agent >= 0) out << row.agent;
    out << ',' << buf << '\n';
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open metrics file: " + path);
    std::vector<MetricsRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        MetricsRow row;
        std::getline(ss, field, ',');
        row.epoch = std::stoi(field);
        std::getline(ss, field, ',');
        row.seed = std::stoull(field);
        std::getline(ss, row.metric, ',');
        std::getline(ss, field, ',');
        row.agent = field.empty() ? -1 : std::stoi(field);
        std::getline(ss, field, ',');
        row.value = std::stod(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SummaryRow> summarize_rows(const std::vector<MetricsRow>& rows) {
    std::map<std::tuple<std::string, int, int>, std::vector<double>> groups;
    for (const auto& row : rows)
        groups[{row.metric, row.agent, row.epoch}].push_back(row.value);

    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        SummaryRow s;
        std::tie(s.metric, s.agent, s.epoch) = key;
        s.n = static_cast<int>(values.size());
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean = sum / s.n;
        if (s.n >= 2) {
            double ssq = 0.0;
            for (double v : values) ssq += (v - s.mean) * (v - s.mean);
            double sd = std::sqrt(ssq / (s.n - 1));
            s.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(s.n));
        }
        out.push_back(std::move(s));
    }
    return out;
}

double trailing_mean(const std::vector<MetricsRow>& rows, const std::string& metric,
                     int window) {
    int max_epoch = -1;
    for (const auto& row : rows)
        if (row.metric == metric) max_epoch = std::max(max_epoch, row.epoch);
    if (max_epoch < 0) throw std::invalid_argument("metric not present: " + metric);
    double sum = 0.0;
    long count = 0;
    for (const auto& row : rows) {
        if (row.metric == metric && row.epoch > max_epoch - window) {
            sum += row.value;
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

}  // namespace pisim
