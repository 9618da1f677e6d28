#include "betanet/bayesnet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "betanet/errors.hpp"
#include "betanet/mcint.hpp"

namespace betanet {

Dag::Dag(int n_, std::vector<std::vector<int>> ps) : n(n_), parents(std::move(ps)) {
    if (static_cast<int>(parents.size()) != n) throw DomainError("Dag: one parent list per vertex");
    for (int v = 0; v < n; ++v) {
        auto& p = parents[v];
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        for (int u : p)
            if (u < 0 || u >= n || u == v) throw DomainError("Dag: bad parent index");
    }
    topological_order();
}

bool Dag::has_edge(int u, int v) const {
    return std::binary_search(parents[v].begin(), parents[v].end(), u);
}

int Dag::edge_count() const {
    int e = 0;
    for (const auto& p : parents) e += static_cast<int>(p.size());
    return e;
}

int Dag::max_in_degree() const {
    size_t m = 0;
    for (const auto& p : parents) m = std::max(m, p.size());
    return static_cast<int>(m);
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> indeg(n), order;
    std::vector<std::vector<int>> kids(n);
    for (int v = 0; v < n; ++v) {
        indeg[v] = static_cast<int>(parents[v].size());
        for (int u : parents[v]) kids[u].push_back(v);
    }
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (size_t i = 0; i < order.size(); ++i)
        for (int w : kids[order[i]])
            if (--indeg[w] == 0) order.push_back(w);
    if (static_cast<int>(order.size()) != n) throw DomainError("graph has a directed cycle");
    return order;
}

bool Dag::is_acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

long Dag::parameter_count() const {
    long s = 0;
    for (const auto& p : parents) s += 1L << p.size();
    return s;
}

namespace {

unsigned parent_index(const std::vector<int>& pa, unsigned x) {
    unsigned j = 0;
    for (size_t i = 0; i < pa.size(); ++i) j |= ((x >> pa[i]) & 1u) << i;
    return j;
}

}  // namespace

BayesNet::BayesNet(Dag g, std::vector<std::vector<double>> cpts) : dag(std::move(g)), cpt(std::move(cpts)) {
    if (static_cast<int>(cpt.size()) != dag.n) throw DomainError("BayesNet: one CPT per vertex");
    for (int v = 0; v < dag.n; ++v) {
        if (cpt[v].size() != (1u << dag.parents[v].size())) throw DomainError("BayesNet: CPT size mismatch");
        for (double p : cpt[v])
            if (!(p >= 0 && p <= 1)) throw DomainError("BayesNet: CPT entry outside [0,1]");
    }
}

std::vector<double> BayesNet::joint() const {
    const unsigned M = 1u << dag.n;
    std::vector<double> out(M, 1.0);
    for (unsigned x = 0; x < M; ++x)
        for (int v = 0; v < dag.n; ++v) {
            double p1 = cpt[v][parent_index(dag.parents[v], x)];
            out[x] *= ((x >> v) & 1u) ? p1 : 1 - p1;
        }
    return out;
}

EmpiricalCounts EmpiricalCounts::from_counts(int n, std::vector<long> counts) {
    if (n < 1 || n > 20 || counts.size() != (1u << n)) throw DomainError("EmpiricalCounts: need 2^n cells");
    EmpiricalCounts c;
    c.n = n;
    for (long v : counts) {
        if (v < 0) throw DomainError("EmpiricalCounts: negative count");
        c.N += v;
    }
    c.counts = std::move(counts);
    return c;
}

EmpiricalCounts sample(const BayesNet& bn, long N, std::uint64_t seed) {
    if (N < 1) throw DomainError("sample: N must be >= 1");
    const auto order = bn.dag.topological_order();
    Rng rng(seed);
    std::vector<long> counts(1u << bn.dag.n, 0);
    for (long r = 0; r < N; ++r) {
        unsigned x = 0;
        for (int v : order) {
            double p1 = bn.cpt[v][parent_index(bn.dag.parents[v], x)];
            if (rng.uniform() < p1) x |= 1u << v;
        }
        ++counts[x];
    }
    return EmpiricalCounts::from_counts(bn.dag.n, std::move(counts));
}

namespace {

template <class Cell>
bool gather(const std::vector<Cell>& w, int n, int A, int B, const std::vector<int>& S, unsigned s, double* q) {
    if (A == B || A < 0 || B < 0 || A >= n || B >= n) throw DomainError("conditional pair: need distinct A, B");
    for (int v : S)
        if (v == A || v == B) throw DomainError("conditional pair: S must exclude A and B");
    q[0] = q[1] = q[2] = q[3] = 0;
    for (unsigned x = 0; x < w.size(); ++x) {
        bool match = true;
        for (size_t i = 0; i < S.size() && match; ++i) match = ((x >> S[i]) & 1u) == ((s >> i) & 1u);
        if (!match) continue;
        q[2 * ((x >> A) & 1u) + ((x >> B) & 1u)] += static_cast<double>(w[x]);
    }
    return q[0] + q[1] + q[2] + q[3] > 0;
}

}  // namespace

std::optional<PairTable> conditional_pair_table(const EmpiricalCounts& counts, int A, int B,
                                                const std::vector<int>& S, unsigned s) {
    double q[4];
    if (!gather(counts.counts, counts.n, A, B, S, s, q)) return std::nullopt;
    double tot = q[0] + q[1] + q[2] + q[3];
    return PairTable{Table(2, 2, {q[0] / tot, q[1] / tot, q[2] / tot, q[3] / tot}), std::lround(tot)};
}

std::optional<Table> conditional_pair_distribution(const std::vector<double>& joint, int n, int A, int B,
                                                   const std::vector<int>& S, unsigned s) {
    double q[4];
    if (!gather(joint, n, A, B, S, s, q)) return std::nullopt;
    double tot = q[0] + q[1] + q[2] + q[3];
    if (tot <= kZeroCell) return std::nullopt;
    return Table(2, 2, {q[0] / tot, q[1] / tot, q[2] / tot, q[3] / tot});
}

std::vector<std::vector<int>> separating_sets(const SeparatingCollection& coll, const Dag& g, int A, int B) {
    if (A == B) throw DomainError("separating_sets: need A != B");
    std::vector<std::vector<int>> out;
    if (coll.kind == SeparatingCollection::Kind::AllSubsets) {
        std::vector<int> rest;
        for (int v = 0; v < g.n; ++v)
            if (v != A && v != B) rest.push_back(v);
        const unsigned M = 1u << rest.size();
        for (int size = 0; size <= std::min<int>(coll.d, static_cast<int>(rest.size())); ++size)
            for (unsigned m = 0; m < M; ++m) {
                if (std::popcount(m) != size) continue;
                std::vector<int> S;
                for (size_t i = 0; i < rest.size(); ++i)
                    if (m >> i & 1u) S.push_back(rest[i]);
                out.push_back(std::move(S));
            }
        return out;
    }
    for (auto [x, y] : {std::pair{A, B}, std::pair{B, A}}) {
        std::vector<int> S;
        for (int u : g.parents[x])
            if (u != y) S.push_back(u);
        if (std::find(out.begin(), out.end(), S) == out.end()) out.push_back(std::move(S));
    }
    return out;
}

double edge_strength(const std::vector<double>& joint, const Dag& g, const SeparatingCollection& coll) {
    double eps = std::numeric_limits<double>::infinity();
    for (int v = 0; v < g.n; ++v)
        for (int u : g.parents[v]) {
            double best_s = std::numeric_limits<double>::infinity();
            for (const auto& S : separating_sets(coll, g, u, v)) {
                double mx = -1;
                for (unsigned s = 0; s < (1u << S.size()); ++s)
                    if (auto t = conditional_pair_distribution(joint, g.n, u, v, S, s))
                        mx = std::max(mx, mutual_information(*t));
                if (mx < 0) throw DomainError("edge_strength: every assignment of a separating set is impossible");
                best_s = std::min(best_s, mx);
            }
            eps = std::min(eps, best_s);
        }
    return eps;
}

std::vector<Dag> enumerate_dags(int n, int d) {
    if (n < 1 || n > 5) throw DomainError("enumerate_dags: exhaustive search supports n <= 5; use a greedy search beyond");
    // parent-set candidates per vertex as bitmasks
    std::vector<std::vector<unsigned>> cand(n);
    for (int v = 0; v < n; ++v)
        for (unsigned m = 0; m < (1u << n); ++m)
            if (!(m >> v & 1u) && std::popcount(m) <= d) cand[v].push_back(m);
    std::vector<Dag> out;
    std::vector<size_t> pick(n, 0);
    std::vector<unsigned> pm(n);
    while (true) {
        for (int v = 0; v < n; ++v) pm[v] = cand[v][pick[v]];
        // acyclic iff vertices can be peeled off repeatedly as sources
        unsigned left = (1u << n) - 1;
        bool progress = true;
        while (left && progress) {
            progress = false;
            for (int v = 0; v < n; ++v)
                if ((left >> v & 1u) && !(pm[v] & left)) {
                    left &= ~(1u << v);
                    progress = true;
                }
        }
        if (!left) {
            Dag g(n);
            for (int v = 0; v < n; ++v)
                for (int u = 0; u < n; ++u)
                    if (pm[v] >> u & 1u) g.parents[v].push_back(u);
            out.push_back(std::move(g));
        }
        int i = n - 1;
        while (i >= 0 && ++pick[i] == cand[i].size()) pick[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

namespace {

std::string bits(unsigned x, size_t len) {
    if (len == 0) return "-";
    std::string s(len, '0');
    for (size_t i = 0; i < len; ++i)
        if (x >> i & 1u) s[i] = '1';
    return s;
}

unsigned parse_bits(const std::string& s, size_t len, bool& ok) {
    ok = true;
    if (len == 0) {
        ok = s == "-";
        return 0;
    }
    if (s.size() != len) {
        ok = false;
        return 0;
    }
    unsigned x = 0;
    for (size_t i = 0; i < len; ++i) {
        if (s[i] == '1')
            x |= 1u << i;
        else if (s[i] != '0')
            ok = false;
    }
    return x;
}

struct LineReader {
    std::istream& is;
    std::string name;
    int lineno = 0;
    std::string line;
    // next non-empty, non-comment line
    bool next() {
        while (std::getline(is, line)) {
            ++lineno;
            auto p = line.find_first_not_of(" \t\r");
            if (p == std::string::npos || line[p] == '#') continue;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw LoadError(name, lineno, msg); }
};

void write_structure(std::ostream& os, const Dag& g, int d) {
    os << g.n << " " << d << "\n";
    for (int v = 0; v < g.n; ++v) {
        os << v << ":";
        for (int u : g.parents[v]) os << " " << u;
        os << "\n";
    }
}

}  // namespace

void write_dag(std::ostream& os, const Dag& g, int d) { write_structure(os, g, d); }

void write_network(std::ostream& os, const BayesNet& bn, int d) {
    write_structure(os, bn.dag, d);
    for (int v = 0; v < bn.dag.n; ++v)
        for (unsigned j = 0; j < bn.cpt[v].size(); ++j) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", bn.cpt[v][j]);
            os << v << " " << bits(j, bn.dag.parents[v].size()) << " " << buf << "\n";
        }
}

BayesNet read_network(std::istream& is, const std::string& name) {
    LineReader r{is, name, 0, {}};
    if (!r.next()) r.fail("empty network file");
    int n = 0, d = 0;
    {
        std::istringstream ss(r.line);
        if (!(ss >> n >> d) || n < 1 || n > 20) r.fail("expected 'n d'");
    }
    std::vector<std::vector<int>> ps(n);
    for (int v = 0; v < n; ++v) {
        if (!r.next()) r.fail("missing parent line");
        auto colon = r.line.find(':');
        if (colon == std::string::npos) r.fail("expected 'v: parents'");
        int vv = -1;
        if (!(std::istringstream(r.line.substr(0, colon)) >> vv) || vv != v) r.fail("parent lines must be in vertex order");
        std::istringstream ss(r.line.substr(colon + 1));
        int u;
        while (ss >> u) ps[v].push_back(u);
    }
    Dag g;
    try {
        g = Dag(n, ps);
    } catch (const DomainError& e) {
        r.fail(e.what());
    }
    if (g.max_in_degree() > d) r.fail("in-degree exceeds the declared bound d");
    std::vector<std::vector<double>> cpt(n);
    std::vector<std::vector<char>> seen(n);
    for (int v = 0; v < n; ++v) {
        cpt[v].assign(1u << g.parents[v].size(), 0.0);
        seen[v].assign(cpt[v].size(), 0);
    }
    while (r.next()) {
        std::istringstream ss(r.line);
        int v;
        std::string a;
        double p;
        if (!(ss >> v >> a >> p) || v < 0 || v >= n) r.fail("expected 'v assignment p1'");
        bool ok;
        unsigned j = parse_bits(a, g.parents[v].size(), ok);
        if (!ok) r.fail("bad parent assignment '" + a + "'");
        if (!(p >= 0 && p <= 1)) r.fail("probability outside [0,1]");
        cpt[v][j] = p;
        seen[v][j] = 1;
    }
    for (int v = 0; v < n; ++v)
        for (char c : seen[v])
            if (!c) throw LoadError(name, 0, "missing CPT row for vertex " + std::to_string(v));
    return BayesNet(std::move(g), std::move(cpt));
}

void write_counts(std::ostream& os, const EmpiricalCounts& c) {
    os << c.n << " " << c.N << "\n";
    for (unsigned x = 0; x < c.counts.size(); ++x)
        if (c.counts[x]) os << bits(x, c.n) << " " << c.counts[x] << "\n";
}

EmpiricalCounts read_counts(std::istream& is, const std::string& name) {
    LineReader r{is, name, 0, {}};
    if (!r.next()) r.fail("empty data file");
    int n = 0;
    long N = 0;
    {
        std::istringstream ss(r.line);
        if (!(ss >> n >> N) || n < 1 || n > 20 || N < 0) r.fail("expected 'n N'");
    }
    std::vector<long> counts(1u << n, 0);
    long total = 0;
    while (r.next()) {
        std::istringstream ss(r.line);
        std::string a;
        long k;
        if (!(ss >> a >> k) || k < 0) r.fail("expected 'assignment count'");
        bool ok;
        unsigned x = parse_bits(a, n, ok);
        if (!ok) r.fail("bad assignment '" + a + "'");
        counts[x] += k;
        total += k;
    }
    if (total != N) throw LoadError(name, 1, "counts sum to " + std::to_string(total) + ", header says " + std::to_string(N));
    return EmpiricalCounts::from_counts(n, std::move(counts));
}

}  // namespace betanet
