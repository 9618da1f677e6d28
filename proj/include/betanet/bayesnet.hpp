#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "betanet/simplex.hpp"

namespace betanet {

// DAG over vertices 0..n-1; parents kept sorted.
struct Dag {
    int n = 0;
    std::vector<std::vector<int>> parents;

    Dag() = default;
    explicit Dag(int n_) : n(n_), parents(n_) {}
    Dag(int n_, std::vector<std::vector<int>> ps);  // sorts, checks acyclicity

    bool has_edge(int u, int v) const;  // u -> v
    bool adjacent(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }
    int edge_count() const;
    int max_in_degree() const;
    std::vector<int> topological_order() const;  // throws DomainError if cyclic
    bool is_acyclic() const;
    // sum over vertices of 2^|Pa(v)|
    long parameter_count() const;

    bool operator==(const Dag& o) const { return n == o.n && parents == o.parents; }
};

// Binary network. cpt[v][j] = P(X_v = 1 | parents in assignment j), where bit
// i of j is the value of the i-th parent in sorted order.
struct BayesNet {
    Dag dag;
    std::vector<std::vector<double>> cpt;

    BayesNet(Dag g, std::vector<std::vector<double>> cpts);
    // full joint over 2^n assignments; bit v of the index is X_v
    std::vector<double> joint() const;
};

struct EmpiricalCounts {
    int n = 0;
    long N = 0;
    std::vector<long> counts;  // indexed like BayesNet::joint

    static EmpiricalCounts from_counts(int n, std::vector<long> counts);
};

EmpiricalCounts sample(const BayesNet& bn, long N, std::uint64_t seed);

struct PairTable {
    Table table;  // rows: X_A, columns: X_B
    long count = 0;
};
// records matching s on S (bit i of s is the value of S[i]), marginalized to (A,B);
// nullopt when no record matches
std::optional<PairTable> conditional_pair_table(const EmpiricalCounts& counts, int A, int B,
                                                const std::vector<int>& S, unsigned s);
// same on a joint distribution; nullopt when P(s) = 0
std::optional<Table> conditional_pair_distribution(const std::vector<double>& joint, int n, int A, int B,
                                                   const std::vector<int>& S, unsigned s);

struct SeparatingCollection {
    enum class Kind { AllSubsets, ParentBased };
    Kind kind = Kind::AllSubsets;
    int d = 2;
};

std::vector<std::vector<int>> separating_sets(const SeparatingCollection& coll, const Dag& g, int A, int B);

// min over edges, min over S, max over s of tau(P(A,B|s)); +inf for an edgeless graph
double edge_strength(const std::vector<double>& joint, const Dag& g, const SeparatingCollection& coll);

// all DAGs on n labelled vertices with in-degree <= d (n <= 5)
std::vector<Dag> enumerate_dags(int n, int d);

// text formats
void write_network(std::ostream& os, const BayesNet& bn, int d);
BayesNet read_network(std::istream& is, const std::string& name = "<stream>");
void write_dag(std::ostream& os, const Dag& g, int d);
void write_counts(std::ostream& os, const EmpiricalCounts& c);
EmpiricalCounts read_counts(std::istream& is, const std::string& name = "<stream>");

}  // namespace betanet
