#include "betanet/stepcdf.hpp"

#include <algorithm>
#include <cmath>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"
#include "betanet/simplex.hpp"

namespace betanet {

double StepCdf::quantize(double v) { return std::nearbyint(v / kKeyQuantum) * kKeyQuantum; }

void StepCdf::account_for_event(double probability, double value) {
    if (!(probability >= 0)) throw DomainError("account_for_event: negative probability");
    if (probability == 0) return;
    jumps_[quantize(value)] += probability;
    indexed_ = false;
}

void StepCdf::merge(const StepCdf& other) {
    auto hint = jumps_.begin();
    for (const auto& [k, m] : other.jumps_) {
        hint = jumps_.try_emplace(hint, k, 0.0);
        hint->second += m;
    }
    indexed_ = false;
}

void StepCdf::finalize() {
    keys_.clear();
    cum_.clear();
    keys_.reserve(jumps_.size());
    cum_.reserve(jumps_.size());
    double s = 0;
    for (const auto& [k, m] : jumps_) {
        s += m;
        keys_.push_back(k);
        cum_.push_back(s);
    }
    indexed_ = true;
}

double StepCdf::cumulative_at(double value) const {
    if (indexed_) {
        auto it = std::upper_bound(keys_.begin(), keys_.end(), value);
        if (it == keys_.begin()) return 0.0;
        return cum_[static_cast<size_t>(it - keys_.begin()) - 1];
    }
    double s = 0;
    for (auto it = jumps_.begin(); it != jumps_.end() && it->first <= value; ++it) s += it->second;
    return s;
}

double StepCdf::total_mass() const {
    if (indexed_) return cum_.empty() ? 0.0 : cum_.back();
    double s = 0;
    for (const auto& kv : jumps_) s += kv.second;
    return s;
}

std::vector<double> klogk_table(int N) {
    std::vector<double> t(N + 1);
    for (int k = 0; k <= N; ++k) t[k] = xlogx(static_cast<double>(k));
    return t;
}

double type_tau(std::span<const int> c, std::span<const double> klogk) {
    const int N = c[0] + c[1] + c[2] + c[3];
    if (N == 0) return 0.0;
    double s = klogk[c[0]] + klogk[c[1]] + klogk[c[2]] + klogk[c[3]] + klogk[N] - klogk[c[0] + c[1]] -
               klogk[c[2] + c[3]] - klogk[c[0] + c[2]] - klogk[c[1] + c[3]];
    s /= N;
    return s > 0 ? s : 0.0;
}

namespace {

// (tick, mass) pairs, sorted and reduced before touching the map
template <class W>
StepCdf accumulate(int N, const std::vector<TypePrefix>& prefixes, W&& weight) {
    const auto klogk = klogk_table(N);
    std::vector<std::pair<double, double>> ev;
    for (const auto& pre : prefixes) {
        dfs_process(pre, [&](std::span<const int> c) {
            double w = weight(c);
            if (w > 0) ev.emplace_back(StepCdf::quantize(type_tau(c, klogk)), w);
        });
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    StepCdf out;
    size_t i = 0;
    while (i < ev.size()) {
        double k = ev[i].first, m = 0;
        for (; i < ev.size() && ev[i].first == k; ++i) m += ev[i].second;
        out.account_for_event(m, k);
    }
    return out;
}

struct ExactWeight {
    std::vector<double> lgam, logp;
    int N;
    ExactWeight(int N_, double eta) : lgam(N_ + 1), logp(4), N(N_) {
        for (int k = 0; k <= N; ++k) lgam[k] = std::lgamma(k + 1.0);
        const auto p = reference_distribution(eta).cells();
        for (int i = 0; i < 4; ++i) logp[i] = std::log(p[i]);
    }
    double operator()(std::span<const int> c) const {
        double s = lgam[N];
        for (int i = 0; i < 4; ++i) s += c[i] * logp[i] - lgam[c[i]];
        return std::exp(s);
    }
};

void check_args(int N, int n) {
    if (N < 1) throw DomainError("exact_beta_cdf: N must be >= 1");
    if (n != 4) throw DomainError("exact_beta_cdf: tau is defined for 2x2 tables (n = 4)");
}

}  // namespace

StepCdf lattice_cdf(int N, const std::vector<TypePrefix>& prefixes, const TypeWeight& weight) {
    StepCdf out = accumulate(N, prefixes, weight);
    out.finalize();
    return out;
}

StepCdf exact_beta_cdf(int N, double eta, int n) {
    check_args(N, n);
    ExactWeight w(N, eta);
    StepCdf out = accumulate(N, {TypePrefix::root(N, n)}, w);
    out.finalize();
    return out;
}

StepCdf exact_beta_cdf_parallel(int N, double eta, int n, int modulus) {
    check_args(N, n);
    if (modulus < 1) throw DomainError("exact_beta_cdf_parallel: modulus must be >= 1");
    const ExactWeight w(N, eta);
    const auto root = TypePrefix::root(N, n);
    std::vector<StepCdf> parts(modulus);
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < modulus; ++k) parts[k] = accumulate(N, children_last_entry_mod(root, k, modulus), w);
    StepCdf out;
    for (const auto& p : parts) out.merge(p);
    out.finalize();
    return out;
}

}  // namespace betanet
