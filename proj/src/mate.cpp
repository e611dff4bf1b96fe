#include "pisim/mate.hpp"

namespace pisim {

std::vector<double> MateProtocol::exchange(std::span<const int>, const StepContext& ctx,
                                           Rng&) {
    const int n = static_cast<int>(ctx.env_rewards.size());
    if (static_cast<int>(token_.size()) != n)
        throw std::invalid_argument("token count does not match agent count");
    const auto& nbhd = *ctx.neighborhoods;

    std::vector<double> shaped(ctx.env_rewards.begin(), ctx.env_rewards.end());

    // Request phase: all requests are decided on the pre-exchange snapshot.
    std::vector<double> request_sum(n, 0.0);
    std::vector<std::vector<AgentId>> requesters(n);
    for (int i = 0; i < n; ++i) {
        double mi = mate_mi(ctx.env_rewards[i], ctx.value_cur[i], ctx.value_next[i], ctx.gamma);
        if (mi >= 0.0) {
            for (AgentId j : nbhd[i]) {
                request_sum[j] += token_[i];
                requesters[j].push_back(i);
            }
        }
    }

    // Response phase: incoming requests are evaluated jointly as their sum
    // and the same signed token goes back to every requester.
    for (int j = 0; j < n; ++j) {
        if (requesters[j].empty()) continue;
        double mi = mate_mi(ctx.env_rewards[j] + request_sum[j], ctx.value_cur[j],
                            ctx.value_next[j], ctx.gamma);
        double response;
        if (mi >= 0.0) {
            shaped[j] += request_sum[j];
            response = token_[j];
        } else {
            response = -token_[j];
        }
        for (AgentId i : requesters[j]) shaped[i] += response;
    }
    return shaped;
}

}  // namespace pisim
