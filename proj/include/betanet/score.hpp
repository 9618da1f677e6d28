#pragma once

#include <memory>
#include <vector>

#include "betanet/bayesnet.hpp"
#include "betanet/betatable.hpp"

namespace betanet {

struct ScoreConfig {
    double kappa = 0.5;  // psi_1(N) = kappa log N; 0.5 is the MDL weight
    std::shared_ptr<const BetaTable> table;  // the reference eta is table->eta
    SeparatingCollection collection;
    bool stratum_n = true;   // look up beta at the stratum's record count rather than N
    bool use_boost = true;   // false leaves the BIC/MDL score
};

struct ScoreBreakdown {
    double log_likelihood = 0;
    double complexity_penalty = 0;
    double sparsity_boost = 0;
    double total = 0;
};

// -N * sum_i H(X_i | Pa(X_i)) from counts
double log_likelihood(const EmpiricalCounts& counts, const Dag& g);
// -N * sum_i H_P(X_i | Pa(X_i)) for a joint distribution P
double idealized_log_likelihood(const std::vector<double>& joint, const Dag& g, long N);
// prod_i P(X_i | Pa(X_i)); parent rows of probability zero are filled uniformly
std::vector<double> project_onto_dag(const std::vector<double>& joint, const Dag& g);

// min over assignments s of S of -log beta at the conditional pair table
double pair_boost(const EmpiricalCounts& counts, int A, int B, const std::vector<int>& S, const ScoreConfig& cfg);
double sparsity_boost(const EmpiricalCounts& counts, const Dag& g, const ScoreConfig& cfg);
ScoreBreakdown score(const EmpiricalCounts& counts, const Dag& g, const ScoreConfig& cfg);

struct ScoredDag {
    Dag dag;
    ScoreBreakdown score;
};
struct LearnResult {
    Dag best;
    ScoreBreakdown best_score;
    std::vector<ScoredDag> candidates;  // enumeration order
};

// exhaustive argmax over DAGs with in-degree <= d; ties go to fewer edges,
// then to the lexicographically smallest parent lists
LearnResult learn_all(const EmpiricalCounts& counts, int d, const ScoreConfig& cfg);
Dag learn(const EmpiricalCounts& counts, int n, int d, const ScoreConfig& cfg);

}  // namespace betanet
