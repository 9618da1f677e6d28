#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "betanet/typespace.hpp"

namespace betanet {

// Monotone step function: mass accumulated at each discontinuity. Queries use
// the closed convention, cumulative_at(v) = sum of masses at keys <= v.
class StepCdf {
public:
    // keys are rounded to this grid so that float near-duplicates coincide
    static constexpr double kKeyQuantum = 1e-14;
    static double quantize(double v);

    void account_for_event(double probability, double value);
    void merge(const StepCdf& other);
    double cumulative_at(double value) const;
    double total_mass() const;

    // Builds the prefix-sum index. Until then queries walk the map, which is
    // correct but linear. Finalized objects are safe for concurrent reads.
    void finalize();

    const std::map<double, double>& jumps() const { return jumps_; }
    size_t size() const { return jumps_.size(); }

private:
    std::map<double, double> jumps_;
    std::vector<double> keys_, cum_;
    bool indexed_ = false;
};

// tau of the empirical 2x2 table with counts {n00, n01, n10, n11}, computed
// from integer counts with a k*log(k) lookup of length N+1.
double type_tau(std::span<const int> counts, std::span<const double> klogk);
std::vector<double> klogk_table(int N);

using TypeWeight = std::function<double(std::span<const int>)>;
// Adds weight(T) at tau(p_T) for every 2x2 type below the given prefixes.
StepCdf lattice_cdf(int N, const std::vector<TypePrefix>& prefixes, const TypeWeight& weight);

StepCdf exact_beta_cdf(int N, double eta, int n = 4);
// Root children split by last entry mod `modulus`; each class is processed by
// its own worker into a private StepCdf, then merged in class order.
StepCdf exact_beta_cdf_parallel(int N, double eta, int n, int modulus);

}  // namespace betanet
