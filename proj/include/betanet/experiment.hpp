#pragma once

#include <cstdint>
#include <vector>

#include "betanet/bayesnet.hpp"
#include "betanet/score.hpp"

namespace betanet {

struct Interval {
    double lo = 0, hi = 1;
};
// Wilson score interval for a binomial proportion
Interval wilson_interval(long successes, long trials, double confidence);

// A -> B with uniform marginals and tau(P) = tau; tau = 0 is the empty graph
BayesNet two_node_network(double tau);
// 0 -> 1 -> ... -> n-1, each link a symmetric channel whose pair table has tau = link_tau
BayesNet chain_network(int n, double link_tau);
// 0 -> 2 <- 1
BayesNet collider_network();

// same skeleton and same v-structures
bool markov_equivalent(const Dag& a, const Dag& b);

struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    bool recovered = false;
    Dag learned;
    ScoreBreakdown score;
};

struct RecoverySummary {
    std::vector<TrialResult> trials;
    long recovered = 0;
    Interval wilson;
};

// trial i samples N records with seed mix_seed(seed, i), learns over in-degree <= d,
// and counts a success when the result is Markov equivalent to truth
RecoverySummary run_recovery(const BayesNet& truth, long N, int trials, std::uint64_t seed, int d,
                             const ScoreConfig& cfg, double confidence = 0.95);

}  // namespace betanet
