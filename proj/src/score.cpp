#include "betanet/score.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"

namespace betanet {

namespace {

// marginal of w over vars; bit i of the result index is vars[i]
template <class T>
std::vector<double> marginal(const std::vector<T>& w, const std::vector<int>& vars) {
    std::vector<double> m(1u << vars.size(), 0.0);
    for (unsigned x = 0; x < w.size(); ++x) {
        unsigned j = 0;
        for (size_t i = 0; i < vars.size(); ++i) j |= ((x >> vars[i]) & 1u) << i;
        m[j] += static_cast<double>(w[x]);
    }
    return m;
}

double sum_xlogx(const std::vector<double>& m) {
    double s = 0;
    for (double v : m) s += xlogx(v);
    return s;
}

std::vector<int> family(const Dag& g, int v) {
    std::vector<int> f = g.parents[v];
    f.push_back(v);
    return f;
}

// sum over x of P(x, pa) log P(x | pa), i.e. -H(X_v | Pa)
template <class T>
double neg_cond_entropy_mass(const std::vector<T>& w, const Dag& g, int v) {
    return sum_xlogx(marginal(w, family(g, v))) - sum_xlogx(marginal(w, g.parents[v]));
}

}  // namespace

double log_likelihood(const EmpiricalCounts& counts, const Dag& g) {
    if (counts.n != g.n) throw DomainError("log_likelihood: vertex count mismatch");
    // with raw counts c: -N H(X|Pa) = sum c(x,pa) log c(x,pa) - sum c(pa) log c(pa)
    double ll = 0;
    for (int v = 0; v < g.n; ++v) ll += neg_cond_entropy_mass(counts.counts, g, v);
    return ll;
}

double idealized_log_likelihood(const std::vector<double>& joint, const Dag& g, long N) {
    if (joint.size() != (1u << g.n)) throw DomainError("idealized_log_likelihood: joint size mismatch");
    double s = 0;
    for (int v = 0; v < g.n; ++v) s += neg_cond_entropy_mass(joint, g, v);
    return static_cast<double>(N) * s;
}

std::vector<double> project_onto_dag(const std::vector<double>& joint, const Dag& g) {
    if (joint.size() != (1u << g.n)) throw DomainError("project_onto_dag: joint size mismatch");
    std::vector<double> out(joint.size(), 1.0);
    for (int v = 0; v < g.n; ++v) {
        const auto fam = marginal(joint, family(g, v));  // top bit = X_v
        const unsigned k = static_cast<unsigned>(g.parents[v].size());
        for (unsigned x = 0; x < joint.size(); ++x) {
            unsigned j = 0;
            for (unsigned i = 0; i < k; ++i) j |= ((x >> g.parents[v][i]) & 1u) << i;
            double p0 = fam[j], p1 = fam[j | (1u << k)];
            double row = p0 + p1;
            double cond = row > 0 ? ((x >> v) & 1u ? p1 : p0) / row : 0.5;
            out[x] *= cond;
        }
    }
    return out;
}

double pair_boost(const EmpiricalCounts& counts, int A, int B, const std::vector<int>& S, const ScoreConfig& cfg) {
    if (!cfg.table) throw DomainError("sparsity boost needs a beta table");
    double best = std::numeric_limits<double>::infinity();
    for (unsigned s = 0; s < (1u << S.size()); ++s) {
        auto pt = conditional_pair_table(counts, A, B, S, s);
        double cand = 0;  // an empty stratum is no evidence of independence
        if (pt) {
            long Ns = cfg.stratum_n ? pt->count : counts.N;
            double gamma = mutual_information(pt->table);
            if (Ns >= 2) gamma = std::max(gamma, gamma_zero(static_cast<int>(Ns)));
            cand = -interpolate_log_beta(*cfg.table, static_cast<int>(Ns), gamma);
        }
        best = std::min(best, cand);
    }
    return best;
}

double sparsity_boost(const EmpiricalCounts& counts, const Dag& g, const ScoreConfig& cfg) {
    double total = 0;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            if (g.adjacent(a, b)) continue;
            double mx = 0;
            for (const auto& S : separating_sets(cfg.collection, g, a, b))
                mx = std::max(mx, pair_boost(counts, a, b, S, cfg));
            total += mx;
        }
    return total;
}

ScoreBreakdown score(const EmpiricalCounts& counts, const Dag& g, const ScoreConfig& cfg) {
    if (counts.N < 1) throw DomainError("score: need at least one record");
    ScoreBreakdown r;
    r.log_likelihood = log_likelihood(counts, g);
    r.complexity_penalty = cfg.kappa * std::log(static_cast<double>(counts.N)) * g.parameter_count();
    r.sparsity_boost = cfg.use_boost ? sparsity_boost(counts, g, cfg) : 0.0;
    r.total = r.log_likelihood - r.complexity_penalty + r.sparsity_boost;
    return r;
}

LearnResult learn_all(const EmpiricalCounts& counts, int d, const ScoreConfig& cfg) {
    const int n = counts.n;
    auto dags = enumerate_dags(n, d);
    if (counts.N < 1) throw DomainError("learn: need at least one record");

    // Family terms and pair boosts do not depend on the rest of the graph, so
    // they are computed once. Every set the parent-based collection can
    // produce is a subset of size <= d of the other vertices, so the same
    // cache covers both collections.
    std::map<std::pair<int, unsigned>, double> fam;
    for (int v = 0; v < n; ++v)
        for (unsigned m = 0; m < (1u << n); ++m) {
            if (m >> v & 1u || std::popcount(m) > d) continue;
            Dag tmp(n);
            for (int u = 0; u < n; ++u)
                if (m >> u & 1u) tmp.parents[v].push_back(u);
            fam[{v, m}] = neg_cond_entropy_mass(counts.counts, tmp, v);
        }
    std::map<std::tuple<int, int, std::vector<int>>, double> boost;
    if (cfg.use_boost)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (const auto& S : separating_sets({SeparatingCollection::Kind::AllSubsets, d}, Dag(n), a, b))
                    boost[{a, b, S}] = pair_boost(counts, a, b, S, cfg);

    const double logN = std::log(static_cast<double>(counts.N));
    std::vector<ScoredDag> scored(dags.size());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < dags.size(); ++i) {
        const Dag& g = dags[i];
        ScoreBreakdown r;
        for (int v = 0; v < n; ++v) {
            unsigned m = 0;
            for (int u : g.parents[v]) m |= 1u << u;
            r.log_likelihood += fam.at({v, m});
        }
        r.complexity_penalty = cfg.kappa * logN * g.parameter_count();
        if (cfg.use_boost)
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (g.adjacent(a, b)) continue;
                    double mx = 0;
                    for (const auto& S : separating_sets(cfg.collection, g, a, b)) mx = std::max(mx, boost.at({a, b, S}));
                    r.sparsity_boost += mx;
                }
        r.total = r.log_likelihood - r.complexity_penalty + r.sparsity_boost;
        scored[i] = {g, r};
    }

    size_t best = 0;
    for (size_t i = 1; i < scored.size(); ++i) {
        const auto& a = scored[i];
        const auto& b = scored[best];
        double tol = 1e-9 * std::max(1.0, std::fabs(b.score.total));
        bool better;
        if (a.score.total > b.score.total + tol)
            better = true;
        else if (a.score.total < b.score.total - tol)
            better = false;
        else if (a.dag.edge_count() != b.dag.edge_count())
            better = a.dag.edge_count() < b.dag.edge_count();
        else
            better = a.dag.parents < b.dag.parents;
        if (better) best = i;
    }
    LearnResult res{scored[best].dag, scored[best].score, std::move(scored)};
    return res;
}

Dag learn(const EmpiricalCounts& counts, int n, int d, const ScoreConfig& cfg) {
    if (counts.n != n) throw DomainError("learn: data has a different number of variables");
    return learn_all(counts, d, cfg).best;
}

}  // namespace betanet
