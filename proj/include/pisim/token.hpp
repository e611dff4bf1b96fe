#pragma once

#include <limits>
#include <set>
#include <span>
#include <vector>

#include "pisim/env.hpp"
#include "pisim/rng.hpp"

#include <iosfwd>

namespace pisim {

// Per-agent token derivation state. The token starts at a small non-zero
// value so the exchange is active from the first epoch.
struct TokenState {
    double token = 0.1;
    double r_min = std::numeric_limits<double>::infinity();
    double prev_median_mean_value = 0.0;
    std::vector<double> epoch_mean_values;
};

// Mean of the per-step value estimates of one episode.
double mean_accumulated_value(std::span<const double> value_estimates);

// Folds a rollout's environment rewards into the running minimum.
void track_r_min(TokenState& state, std::span<const double> env_rewards);

double median(std::vector<double> values);

// Token increment: alpha * (current - previous)/previous * |r_min|. Returns
// 0 while the previous median is still unset (|prev| < 1e-8), which covers
// the first epoch.
double token_gradient(double prev_median, double current_median, double r_min,
                      double alpha);

// Additive secret shares of one token: n masking values for the neighbors
// plus one reserved share that closes the sum.
struct ShareBundle {
    AgentId origin = 0;
    std::vector<double> shares;  // [0..n-1] distributed, back() reserved

    double reserved() const { return shares.back(); }
};

ShareBundle make_shares(AgentId origin, double token, int neighbor_count, Rng& rng);

struct ConsensusResult {
    double consensus_token = 0.0;
    std::set<AgentId> contributing_ids;
};

// Average consensus over additive secret shares. Phase 1 distributes one
// share per neighbor; phase 2 floods ID-tagged partial sums for
// `iterations` rounds with de-duplication. Every agent divides the partial
// sums it holds by N (the divisor is fixed at N even under partial
// reachability; contributing_ids reports coverage). If trace is non-null,
// one JSON object per message is appended per line.
std::vector<ConsensusResult> consensus_round(const std::vector<ShareBundle>& bundles,
                                             const std::vector<std::vector<AgentId>>& topology,
                                             int iterations, std::ostream* trace = nullptr);

}  // namespace pisim
