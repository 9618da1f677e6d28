#include "betanet/mcint.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"
#include "betanet/typespace.hpp"

namespace betanet {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

namespace {

void check_ctx(const IntegrandContext& ctx) {
    if (ctx.N < 1) throw DomainError("N must be >= 1");
    if (!(ctx.eta > 0 && ctx.eta < std::log(2.0))) throw DomainError("eta must lie in (0, ln 2)");
    if (!(ctx.gamma >= 0)) throw DomainError("gamma must be nonnegative");
}

std::array<double, 4> ref_cells(double eta) {
    double t = reference_t(eta);
    return {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
}

double log_robbins_interior(const double* q, const double* logp, int N) {
    double kl = 0, slog = 0;
    for (int i = 0; i < 4; ++i) {
        double lq = std::log(q[i]);
        kl += q[i] * (lq - logp[i]);
        slog += lq;
    }
    return -N * kl - 1.5 * std::log(2 * std::numbers::pi * N) - 0.5 * slog;
}

// root of tau(t) = gamma on (0, t_max] for base cells b (a product table)
double positive_root(const double* b, double K, double gamma) {
    const double tmax = std::min(b[1], b[2]);
    auto tau = [&](double t) {
        return xlogx(b[0] + t) + xlogx(b[1] - t) + xlogx(b[2] - t) + xlogx(b[3] + t) - K;
    };
    if (gamma <= 0) return 0.0;
    if (gamma >= tau(tmax)) return tmax;
    double lo = 0, hi = tmax;
    double S = 1 / b[0] + 1 / b[1] + 1 / b[2] + 1 / b[3];
    double t = std::sqrt(2 * gamma / S);
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        double q0 = b[0] + t, q1 = b[1] - t, q2 = b[2] - t, q3 = b[3] + t;
        double l0 = std::log(q0), l1 = std::log(q1), l2 = std::log(q2), l3 = std::log(q3);
        double f = q0 * l0 + q1 * l1 + q2 * l2 + q3 * l3 - K - gamma;
        if (f < 0)
            lo = t;
        else
            hi = t;
        double d = l0 + l3 - l1 - l2;
        double tn = d > 0 ? t - f / d : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::fabs(tn - t) <= 1e-15 + 1e-13 * t || hi - lo <= 1e-16) return tn;
        t = tn;
    }
    return t;
}

}  // namespace

std::pair<double, double> fiber_interval(double pa, double pb, double gamma) {
    auto b = coord_map(pa, pb, 0.0);
    double K = xlogx(pa) + xlogx(1 - pa) + xlogx(pb) + xlogx(1 - pb);
    double up = positive_root(b.data(), K, gamma);
    const double mirrored[4] = {b[1], b[0], b[3], b[2]};
    double down = -positive_root(mirrored, K, gamma);
    return {down, up};
}

double robbins_integrand(const double* q, const IntegrandContext& ctx) {
    check_ctx(ctx);
    double s = 0;
    bool zero = false;
    for (int i = 0; i < 4; ++i) {
        if (q[i] < -kZeroCell || q[i] > 1 + kZeroCell) return 0.0;
        if (q[i] <= kZeroCell) zero = true;
        s += q[i];
    }
    if (std::fabs(s - 1) > 1e-9) return 0.0;
    const auto p = ref_cells(ctx.eta);
    if (zero) {
        // only lattice points carry mass on the boundary
        int c[4];
        for (int i = 0; i < 4; ++i) {
            double x = q[i] * ctx.N;
            c[i] = static_cast<int>(std::lround(x));
            if (std::fabs(x - c[i]) > 1e-9 || c[i] < 0) return 0.0;
        }
        return emission_probability(std::span<const int>(c, 4), std::span<const double>(p.data(), 4));
    }
    double logp[4];
    for (int i = 0; i < 4; ++i) logp[i] = std::log(p[i]);
    return std::exp(log_robbins_interior(q, logp, ctx.N));
}

double robbins_integrand(const Table& q, const IntegrandContext& ctx) {
    if (q.rows() != 2 || q.cols() != 2) throw DomainError("robbins_integrand: 2x2 tables only");
    return robbins_integrand(q.cells().data(), ctx);
}

StepCdf robbins_lattice_cdf(int N, double eta) {
    IntegrandContext ctx{eta, N, 0.0};
    check_ctx(ctx);
    const auto p = ref_cells(eta);
    double logp[4];
    for (int i = 0; i < 4; ++i) logp[i] = std::log(p[i]);
    return lattice_cdf(N, {TypePrefix::root(N, 4)}, [&](std::span<const int> c) {
        double q[4];
        bool interior = true;
        for (int i = 0; i < 4; ++i) {
            q[i] = static_cast<double>(c[i]) / N;
            interior = interior && c[i] > 0;
        }
        if (!interior) return emission_probability(c, std::span<const double>(p.data(), 4));
        return std::exp(log_robbins_interior(q, logp, N));
    });
}

std::array<double, 4> coord_map(double pa, double pb, double t) {
    return {pa * pb + t, (1 - pa) * pb - t, pa * (1 - pb) - t, (1 - pa) * (1 - pb) + t};
}

std::array<double, 3> coord_unmap(const std::array<double, 4>& q) {
    double pa = q[0] + q[2];
    double pb = q[0] + q[1];
    return {pa, pb, q[0] - pa * pb};
}

bool coord_valid(const std::array<double, 4>& q) {
    for (double v : q)
        if (v < 0 || v > 1) return false;
    return true;
}

double chernoff_radius(double central_probability, int N) {
    if (!(central_probability > 0 && central_probability < 1)) throw DomainError("central probability in (0,1)");
    if (N < 1) throw DomainError("N must be >= 1");
    return std::sqrt(-std::log(1 - central_probability) / N);
}

SamplingPlan t_sampling_scale(const IntegrandContext& ctx, double central_probability) {
    check_ctx(ctx);
    SamplingPlan plan;
    plan.marginal_scale = chernoff_radius(central_probability, ctx.N);
    // above eta the proposal is built at eta, where the integrand peaks
    const double g = std::min(ctx.gamma, ctx.eta);
    const double tp = t_gamma_plus(TPath::uniform(), g);
    const double tm = -tp, len = tp - tm;
    plan.t_center = tp;
    if (len <= 0) return plan;

    const auto p = ref_cells(ctx.eta);
    double logp[4];
    for (int i = 0; i < 4; ++i) logp[i] = std::log(p[i]);
    auto logf = [&](double t) {
        double q[4] = {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
        return log_robbins_interior(q, logp, ctx.N);
    };
    const double ref = logf(tp);
    const double drop = std::log(kRho);
    // scan down from the center for the first (largest) t where f_N/f_N(t+) <= rho
    const int steps = 1000;
    double prev = tp, tn = tm;
    bool found = false;
    for (int i = 1; i <= steps; ++i) {
        double t = tp - len * i / steps;
        if (logf(t) - ref <= drop) {
            tn = bisect([&](double x) { return logf(x) - ref - drop; }, t, prev, 1e-12);
            found = true;
            break;
        }
        prev = t;
    }
    plan.ratio_attained = found;
    plan.t_n = tn;
    plan.t_scale = tp - tn;
    plan.scale_ratio = plan.t_scale / len;
    return plan;
}

double confidence_quantile(double confidence) {
    if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must lie in (0,1)");
    return boost::math::quantile(boost::math::normal(), 0.5 * (1 + confidence));
}

double stopping_constant(double precision_percent, double confidence) {
    if (!(precision_percent > 0)) throw DomainError("precision must be positive");
    double t = confidence_quantile(confidence) * 100 / precision_percent;
    return t * t;
}

McResult monte_carlo_integrate(const std::function<double(Rng&)>& draw, const McParams& params,
                               std::uint64_t seed, double scale) {
    if (params.max_iterations < 1 || params.record_freq < 1 || params.stop_check_freq < 1)
        throw DomainError("iteration counts must be >= 1");
    const double K = stopping_constant(params.precision_percent, params.confidence);
    Rng rng(seed);
    McResult res;
    double s = 0, s2 = 0;
    long n = 0;
    while (n < params.max_iterations) {
        double v = draw(rng);
        ++n;
        s += v;
        s2 += v * v;
        if (n % params.record_freq == 0) res.iterations.emplace_back(n, scale * s / n);
        if (n % params.stop_check_freq == 0) {
            double I = s / n, F = s2 / n;
            if (I > 0 && n >= K * (F / (I * I) - 1)) {
                res.stopped_by_criterion = true;
                break;
            }
        }
    }
    if (res.iterations.empty() || res.iterations.back().first != n) res.iterations.emplace_back(n, scale * s / n);
    res.iterations_run = n;
    res.final_estimate = scale * s / n;
    return res;
}

McResult monte_carlo_integrate(const IntegrandContext& ctx, const McParams& params, std::uint64_t seed) {
    check_ctx(ctx);
    const SamplingPlan plan = t_sampling_scale(ctx, params.central_probability);
    const auto p = ref_cells(ctx.eta);
    double logp[4];
    for (int i = 0; i < 4; ++i) logp[i] = std::log(p[i]);
    const double tn = plan.marginal_scale;
    const double ratio = plan.scale_ratio;
    const bool above = ctx.gamma > ctx.eta;
    const double log_norm = -1.5 * std::log(2 * std::numbers::pi) - 2 * std::log(tn);
    const int N = ctx.N;
    const double gamma = ctx.gamma, eta = ctx.eta;

    auto draw = [&](Rng& rng) -> double {
        double z1 = rng.normal(), z2 = rng.normal(), z3 = rng.normal();
        double pa = 0.5 + tn * z1, pb = 0.5 + tn * z2;
        if (!(pa > 0 && pa < 1 && pb > 0 && pb < 1)) return 0.0;
        auto [lo, hi] = fiber_interval(pa, pb, gamma);
        double center = hi, width = hi - lo;
        if (above) {
            auto [elo, ehi] = fiber_interval(pa, pb, eta);
            center = ehi;
            width = ehi - elo;
        }
        double sd = ratio * width;
        if (!(sd > 0)) return 0.0;
        double t = center + sd * z3;
        if (t < lo || t > hi) return 0.0;
        auto q = coord_map(pa, pb, t);
        if (q[0] <= 0 || q[1] <= 0 || q[2] <= 0 || q[3] <= 0) return 0.0;
        double log_i = log_robbins_interior(q.data(), logp, N);
        double log_pdf = log_norm - std::log(sd) - 0.5 * (z1 * z1 + z2 * z2 + z3 * z3);
        return std::exp(log_i - log_pdf);
    };
    return monte_carlo_integrate(draw, params, seed, std::pow(static_cast<double>(N), 3));
}

double estimate_beta(int N, double eta, double gamma, const McParams& params, std::uint64_t seed) {
    return monte_carlo_integrate(IntegrandContext{eta, N, gamma}, params, seed).final_estimate;
}

}  // namespace betanet
