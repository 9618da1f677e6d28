#include "betanet/typespace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "betanet/errors.hpp"
#include "betanet/simplex.hpp"

namespace betanet {

int TypePrefix::sum() const {
    int s = 0;
    for (int v : data) s += v;
    return s;
}

std::vector<TypePrefix> children(const TypePrefix& prefix) {
    if (prefix.is_leaf()) throw DomainError("children: prefix is already a complete type");
    std::vector<TypePrefix> out;
    const int residual = prefix.size - prefix.sum();
    auto with = [&](int v) {
        TypePrefix c = prefix;
        c.data.push_back(v);
        return c;
    };
    if (static_cast<int>(prefix.data.size()) == prefix.length - 1) {
        out.push_back(with(residual));
    } else {
        for (int v = 0; v <= residual; ++v) out.push_back(with(v));
    }
    return out;
}

std::vector<TypePrefix> children_last_entry_mod(const TypePrefix& prefix, int k, int m) {
    if (m < 1 || k < 0 || k >= m) throw DomainError("children_last_entry_mod: need 0 <= k < m");
    std::vector<TypePrefix> out;
    for (auto& c : children(prefix))
        if (c.data.back() % m == k) out.push_back(std::move(c));
    return out;
}

std::uint64_t count_types(int N, int n) {
    if (N < 0 || n < 1) throw DomainError("count_types: need N >= 0, n >= 1");
    // C(N+n-1, n-1) built up as C(N+i, i), exact at every step
    unsigned __int128 r = 1;
    for (int i = 1; i <= n - 1; ++i) {
        r = r * static_cast<unsigned>(N + i) / static_cast<unsigned>(i);
        if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("count_types: overflow");
    }
    return static_cast<std::uint64_t>(r);
}

double log_emission_probability(std::span<const int> counts, std::span<const double> p) {
    if (counts.size() != p.size()) throw DomainError("emission_probability: size mismatch");
    int N = 0;
    double s = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) throw DomainError("emission_probability: negative count");
        N += counts[i];
        if (counts[i] == 0) continue;
        if (p[i] <= kZeroCell) return -std::numeric_limits<double>::infinity();
        s += counts[i] * std::log(p[i]) - std::lgamma(counts[i] + 1.0);
    }
    return s + std::lgamma(N + 1.0);
}

double emission_probability(std::span<const int> counts, std::span<const double> p) {
    return std::exp(log_emission_probability(counts, p));
}

double emission_probability_entropy_form(std::span<const int> counts, std::span<const double> p) {
    int N = 0;
    double log_size = 0;
    for (int c : counts) {
        N += c;
        log_size -= std::lgamma(c + 1.0);
    }
    if (N == 0) return 1.0;
    log_size += std::lgamma(N + 1.0);
    std::vector<double> pt(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) pt[i] = static_cast<double>(counts[i]) / N;
    double h = 0, kl = 0;
    for (size_t i = 0; i < pt.size(); ++i) {
        if (pt[i] == 0) continue;
        if (p[i] <= kZeroCell) return 0.0;
        h -= pt[i] * std::log(pt[i]);
        kl += pt[i] * std::log(pt[i] / p[i]);
    }
    return std::exp(log_size - N * (h + kl));
}

}  // namespace betanet
