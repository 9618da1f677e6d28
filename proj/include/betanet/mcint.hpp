#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "betanet/simplex.hpp"
#include "betanet/stepcdf.hpp"

namespace betanet {

// Seeded generator. std::mt19937_64 is fully specified by the standard; the
// uniform and Gaussian transforms below are ours (53-bit mantissa fill and
// Box-Muller), so a seed gives the same stream on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
    double normal();
    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0;
    bool has_spare_ = false;
};

struct IntegrandContext {
    double eta = 0.01;
    int N = 100;
    double gamma = 0.0;
};

// Stirling/Robbins extension of the type probability to the whole simplex.
// Cells are {q00, q01, q10, q11}; anything outside the simplex gives 0.
double robbins_integrand(const double* q, const IntegrandContext& ctx);
double robbins_integrand(const Table& q, const IntegrandContext& ctx);
// lattice sum of the integrand over all types, keyed by tau like exact_beta_cdf
StepCdf robbins_lattice_cdf(int N, double eta);

// (pA, pB, t) -> [[pA pB + t, (1-pA) pB - t], [pA (1-pB) - t, (1-pA)(1-pB) + t]]
// pA is the first-column marginal, pB the first-row marginal. Unit Jacobian.
std::array<double, 4> coord_map(double pa, double pb, double t);
std::array<double, 3> coord_unmap(const std::array<double, 4>& q);
bool coord_valid(const std::array<double, 4>& q);

inline constexpr double kOneSigmaMass = 0.6826894921;
double chernoff_radius(double central_probability, int N);

struct SamplingPlan {
    double marginal_scale = 0;  // t_N of the marginal Gaussians
    double t_center = 0;        // on the uniform-marginals path
    double t_scale = 0;         // scale_ratio * ell_gamma^0
    double scale_ratio = 0;
    double t_n = 0;             // where f_N falls to rho times its value at the center
    bool ratio_attained = true;
};

// rho = exp(-1/2): the one-sigma drop of a Gaussian
inline constexpr double kRho = 0.60653065971263342;
SamplingPlan t_sampling_scale(const IntegrandContext& ctx,
                              double central_probability = kOneSigmaMass);

struct McParams {
    long max_iterations = 5'000'000;
    long record_freq = 1'000;
    long stop_check_freq = 10'000;
    double precision_percent = 10;
    double confidence = 0.95;
    double central_probability = kOneSigmaMass;
};

struct McResult {
    std::vector<std::pair<long, double>> iterations;  // (n, running estimate)
    double final_estimate = 0;
    long iterations_run = 0;
    bool stopped_by_criterion = false;
};

double confidence_quantile(double confidence);  // two-sided normal quantile
double stopping_constant(double precision_percent, double confidence);

// Plain importance-sampling loop: draw() returns one f/pdf ratio; the running
// mean is multiplied by `scale`.
McResult monte_carlo_integrate(const std::function<double(Rng&)>& draw, const McParams& params,
                               std::uint64_t seed, double scale = 1.0);
// beta_N(gamma) ~ N^3 * integral of the Robbins integrand over tau <= gamma
McResult monte_carlo_integrate(const IntegrandContext& ctx, const McParams& params, std::uint64_t seed);
double estimate_beta(int N, double eta, double gamma, const McParams& params, std::uint64_t seed);

// Both ends of {t : tau(p(t)) <= gamma} on the fiber through the product of
// (pa, 1-pa) columns and (pb, 1-pb) rows. Safeguarded Newton on the convex tau(t).
std::pair<double, double> fiber_interval(double pa, double pb, double gamma);

}  // namespace betanet
