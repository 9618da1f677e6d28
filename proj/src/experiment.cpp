#include "betanet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "betanet/errors.hpp"
#include "betanet/mcint.hpp"
#include "betanet/numeric.hpp"

namespace betanet {

Interval wilson_interval(long successes, long trials, double confidence) {
    if (trials <= 0 || successes < 0 || successes > trials) throw DomainError("bad binomial counts");
    double z = confidence_quantile(confidence);
    double n = double(trials), p = successes / n, z2 = z * z;
    double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {
// P(child = parent) on the uniform path with the given tau
double agreement(double tau) { return 0.5 + 2 * reference_t(tau); }
}  // namespace

BayesNet two_node_network(double tau) {
    if (tau == 0) return BayesNet(Dag(2), {{0.5}, {0.5}});
    double a = agreement(tau);
    return BayesNet(Dag(2, {{}, {0}}), {{0.5}, {1 - a, a}});
}

BayesNet chain_network(int n, double link_tau) {
    if (n < 2) throw DomainError("chain needs at least two nodes");
    double a = agreement(link_tau);
    std::vector<std::vector<int>> ps(n);
    std::vector<std::vector<double>> cpt(n);
    cpt[0] = {0.5};
    for (int v = 1; v < n; ++v) {
        ps[v] = {v - 1};
        cpt[v] = {1 - a, a};
    }
    return BayesNet(Dag(n, ps), cpt);
}

BayesNet collider_network() {
    // parent 0 is bit 0 of the row index
    return BayesNet(Dag(3, {{}, {}, {0, 1}}), {{0.5}, {0.5}, {0.1, 0.7, 0.7, 0.95}});
}

bool markov_equivalent(const Dag& a, const Dag& b) {
    if (a.n != b.n) return false;
    int n = a.n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (a.adjacent(u, v) != b.adjacent(u, v)) return false;
    auto vstructs = [n](const Dag& g) {
        std::vector<std::tuple<int, int, int>> out;
        for (int c = 0; c < n; ++c) {
            const auto& p = g.parents[c];
            for (size_t i = 0; i < p.size(); ++i)
                for (size_t j = i + 1; j < p.size(); ++j)
                    if (!g.adjacent(p[i], p[j])) out.emplace_back(p[i], p[j], c);
        }
        return out;
    };
    return vstructs(a) == vstructs(b);
}

RecoverySummary run_recovery(const BayesNet& truth, long N, int trials, std::uint64_t seed, int d,
                             const ScoreConfig& cfg, double confidence) {
    RecoverySummary s;
    s.trials.resize(trials);
    for (int i = 0; i < trials; ++i) {
        auto& t = s.trials[i];
        t.trial = i;
        t.seed = mix_seed(seed, std::uint64_t(i));
        auto counts = sample(truth, N, t.seed);
        auto res = learn_all(counts, d, cfg);
        t.learned = res.best;
        t.score = res.best_score;
        t.recovered = markov_equivalent(res.best, truth.dag);
        s.recovered += t.recovered;
    }
    s.wilson = wilson_interval(s.recovered, trials, confidence);
    return s;
}

}  // namespace betanet
