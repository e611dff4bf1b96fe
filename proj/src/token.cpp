#include "pisim/token.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace pisim {

double mean_accumulated_value(std::span<const double> value_estimates) {
    if (value_estimates.empty())
        throw std::invalid_argument("empty episode has no mean value");
    double sum = 0.0;
    for (double v : value_estimates) sum += v;
    return sum / static_cast<double>(value_estimates.size());
}

void track_r_min(TokenState& state, std::span<const double> env_rewards) {
    for (double r : env_rewards) state.r_min = std::min(state.r_min, r);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double token_gradient(double prev_median, double current_median, double r_min,
                      double alpha) {
    if (std::abs(prev_median) < 1e-8) return 0.0;
    return alpha * (current_median - prev_median) / prev_median * std::abs(r_min);
}

ShareBundle make_shares(AgentId origin, double token, int neighbor_count, Rng& rng) {
    if (neighbor_count < 0) throw std::invalid_argument("negative neighbor count");
    ShareBundle bundle;
    bundle.origin = origin;
    bundle.shares.resize(neighbor_count + 1);
    // Masking range wide relative to the secret; the distributed shares are
    // a function of the rng stream and this range only.
    double range = std::max(1.0, 10.0 * std::abs(token));
    double sum = 0.0;
    for (int k = 0; k < neighbor_count; ++k) {
        bundle.shares[k] = rng.uniform(-range, range);
        sum += bundle.shares[k];
    }
    bundle.shares[neighbor_count] = token - sum;
    return bundle;
}

std::vector<ConsensusResult> consensus_round(const std::vector<ShareBundle>& bundles,
                                             const std::vector<std::vector<AgentId>>& topology,
                                             int iterations, std::ostream* trace) {
    const int n = static_cast<int>(bundles.size());
    if (static_cast<int>(topology.size()) != n)
        throw std::invalid_argument("topology size does not match bundle count");

    auto emit = [&](nlohmann::json j) {
        if (trace) *trace << j.dump() << "\n";
    };

    // Phase 1: each agent sends one share to each neighbor and keeps the
    // reserved share; each agent's partial sum is ID-tagged.
    std::vector<double> partial(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto& nb = topology[i];
        if (bundles[i].shares.size() != nb.size() + 1)
            throw std::invalid_argument("bundle not sized to neighborhood");
        partial[i] += bundles[i].reserved();
        for (std::size_t k = 0; k < nb.size(); ++k) {
            partial[nb[k]] += bundles[i].shares[k];
            emit({{"type", "share"},
                  {"origin", i},
                  {"to", nb[k]},
                  {"value", bundles[i].shares[k]},
                  {"iteration", 0}});
        }
    }

    // Phase 2: flood partial sums for `iterations` rounds, de-duplicating
    // by origin ID.
    std::vector<std::map<AgentId, double>> known(n);
    for (int i = 0; i < n; ++i) {
        known[i][i] = partial[i];
        emit({{"type", "partial"}, {"origin", i}, {"value", partial[i]}, {"iteration", 0}});
    }
    for (int it = 1; it <= iterations; ++it) {
        auto snapshot = known;
        for (int i = 0; i < n; ++i) {
            for (AgentId j : topology[i]) {
                for (const auto& [id, value] : snapshot[i]) known[j].emplace(id, value);
                if (trace)
                    emit({{"type", "forward"},
                          {"from", i},
                          {"to", j},
                          {"count", snapshot[i].size()},
                          {"iteration", it}});
            }
        }
    }

    std::vector<ConsensusResult> results(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const auto& [id, value] : known[i]) {
            sum += value;
            results[i].contributing_ids.insert(id);
        }
        results[i].consensus_token = sum / static_cast<double>(n);
        emit({{"type", "result"},
              {"agent", i},
              {"consensus", results[i].consensus_token},
              {"contributors", results[i].contributing_ids.size()}});
    }
    return results;
}

}  // namespace pisim
