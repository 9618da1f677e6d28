#include "betanet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/binomial.hpp>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"
#include "betanet/simplex.hpp"

namespace betanet {

namespace {

const double kInvE = std::exp(-1.0);
const double kLog24 = std::log(24.0);
const double kLog48 = std::log(48.0);

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

// g(y) = y - log y + log_x; decreasing on (0, 1], increasing on [1, inf), both convex.
// Newton from the far side of the root moves monotonically toward it, so a
// bracket check is only a guard against rounding.
double solve_upper(double log_x) {
    if (log_x >= -1.0) return 1.0;
    auto g = [&](double y) { return y - std::log(y) + log_x; };
    double lo = 1.0, hi = 2.0 - 2.0 * log_x;
    double y = hi;
    for (int i = 0; i < 200; ++i) {
        double gy = g(y);
        if (gy > 0) hi = y; else lo = y;
        double step = gy / (1.0 - 1.0 / y);
        double next = y - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 4e-16 * y || hi - lo <= 4e-16 * hi) return next;
        y = next;
    }
    return y;
}

double solve_lower(double x) {  // y in (0, 1] with y e^{-y} = x
    if (x >= kInvE) return 1.0;
    double log_x = std::log(x);
    auto g = [&](double y) { return y - std::log(y) + log_x; };
    double lo = 0.5 * x, hi = 1.0;
    double y = lo;
    for (int i = 0; i < 200; ++i) {
        double gy = g(y);
        if (gy > 0) lo = y; else hi = y;
        double next = y - gy / (1.0 - 1.0 / y);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 4e-16 * y || hi - lo <= 4e-16 * hi) return next;
        y = next;
    }
    return y;
}

// W(x) continued by its boundary value 1 for x > 1/e. The lower bounds that
// use it come from y e^{-y} <= x with y >= 1, which is vacuous past 1/e.
double w_ext(double x) {
    require(x > 0, "Lambert argument must be positive");
    return x >= kInvE ? 1.0 : script_w(x);
}
double w_ext_log(double log_x) { return log_x >= -1.0 ? 1.0 : script_w_log(log_x); }

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return boost::math::binomial_coefficient<double>(unsigned(n), unsigned(k));
}

}  // namespace

double script_w(double x) {
    require(x > 0 && x <= kInvE * (1 + 1e-15), "script_w: x must lie in (0, 1/e]");
    return solve_upper(std::log(x));
}

double script_w_log(double log_x) {
    require(log_x <= -1.0 + 1e-15, "script_w: x must lie in (0, 1/e]");
    return solve_upper(log_x);
}

double lambert_wm1(double x) {
    require(x >= -kInvE * (1 + 1e-15) && x < 0, "W_-1: x must lie in [-1/e, 0)");
    return -script_w(std::min(-x, kInvE));
}

double lambert_w0(double x) {
    require(x >= -kInvE * (1 + 1e-15), "W_0: x must be >= -1/e");
    if (x == 0) return 0.0;
    if (x < 0) return -solve_lower(std::min(-x, kInvE));
    // w e^w = x, w > 0; h(w) = w + log w - log x is increasing and concave,
    // Newton from the left stays below the root
    double lx = std::log(x);
    double lo = 0.0, hi = std::max(1.0, lx + 1.0);
    double w = x < 1 ? x * std::exp(-x) : std::max(lx - std::log(std::max(lx, 1.0)), 1e-300);
    w = std::clamp(w, 1e-300, hi);
    for (int i = 0; i < 200; ++i) {
        double h = w + std::log(w) - lx;
        if (h < 0) lo = w; else hi = w;
        double next = w - h / (1.0 + 1.0 / w);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - w) <= 4e-16 * w) return next;
        w = next;
    }
    return w;
}

double k1_constant() {
    double a = 1.0 + std::log(2.0);
    return 192.0 * a * a;
}

double f_tilde(double delta_arg, BoundForm form) {
    require(delta_arg > 0, "F~: argument must be positive");
    double quad = delta_arg * delta_arg / k1_constant();
    double x = delta_arg / 8.0;
    if (x > kInvE) return quad;
    double w = script_w(x);
    double lambert = form.exp_form ? 1.0 / (12.0 * std::exp(w)) : 1.0 / (12.0 * w);
    return std::min(quad, lambert);
}

double f_bound(double delta_arg, BoundForm form) { return std::min(1.0 / 24.0, f_tilde(delta_arg, form)); }
double f_inverse(double delta_arg, BoundForm form) { return 1.0 / f_bound(delta_arg, form); }
double f_tilde_inverse(double delta_arg, BoundForm form) { return 1.0 / f_tilde(delta_arg, form); }

double script_f_n(double N, double delta_arg, BoundForm form) {
    return 24.0 * std::exp(-N * f_bound(delta_arg, form));
}
double script_f_tilde_n(double N, double delta_arg, BoundForm form) {
    return 24.0 * std::exp(-N * f_tilde(delta_arg, form));
}

double script_g_inverse(double delta_arg, double big_gamma, BoundForm form) {
    require(big_gamma > 0, "Gamma must be positive");
    return (kLog24 - std::log(big_gamma)) * f_inverse(delta_arg, form);
}
double script_g_tilde_inverse(double delta_arg, double big_gamma, BoundForm form) {
    require(big_gamma > 0, "Gamma must be positive");
    return (kLog24 - std::log(big_gamma)) * f_tilde_inverse(delta_arg, form);
}

double script_f_tilde_n_inverse(double N, double big_gamma, BoundForm form) {
    require(N > 0, "N must be positive");
    require(big_gamma > 0 && big_gamma < 24, "Gamma must lie in (0, 24)");
    double target = (kLog24 - std::log(big_gamma)) / N;
    double hi = 1.0;
    while (f_tilde(hi, form) < target) hi *= 2;
    double lo = 0;
    for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f_tilde(mid, form) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double n_plogp(double epsilon, double delta) {
    require(epsilon > 0 && epsilon < kInvE, "epsilon must lie in (0, 1/e)");
    require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
    double a = 1.0 + std::log(2.0);
    // 12 / exp(W_{-1}(-eps)) = 12 exp(script_w(eps))
    double m = std::max({3.0 * a * a / (epsilon * epsilon), 24.0, 12.0 * std::exp(script_w(epsilon))});
    return m * std::log(3.0 / delta);
}

double n_sub_n(double epsilon, double delta, int n, int d) {
    require(d >= 0 && n > 2 * d + 1, "N_n needs n > 2d + 1");
    require(epsilon > 0, "epsilon must be positive");
    require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
    double a = 1.0 + std::log(2.0);
    double scale = std::ldexp(1.0, d + 2);  // 2^{d+2}
    double m = std::max({3.0 * a * a * scale * scale * double(n) * n / (epsilon * epsilon), 24.0,
                         12.0 * std::exp(w_ext(epsilon / (n * scale)))});
    double num = 3.0 * std::ldexp(1.0, d + 1) * binom(n, d + 1) * (n - d);
    double den = delta * (n - (2 * d + 1));
    return m * std::log(num / den);
}

double gamma_max(double N, double mu, double eta) {
    require(N >= 1, "N must be >= 1");
    return f_bound(mu * eta) - kLog24 / N;
}

double kappa_prime(double kappa, double N, int x_card) {
    require(N > 1, "kappa' needs N > 1");
    return kappa - x_card * std::log1p(1.0 / N) / std::log(N);
}

double eta_n_minus(double N, double eta, double kp, int x_card) {
    require(N > 1, "eta_N^- needs N > 1");
    require(eta > 0, "eta must be positive");
    double a = eta / (2 * eta + 1);
    double rad = 25.0 * a - 2400.0 * (x_card - kp) * std::log(N) / N;
    require(rad > 0, "eta_N^-: radicand is negative (N too small)");
    double v = (-std::sqrt(a) + std::sqrt(rad)) / 48.0;
    return v * v;
}

double sanov_log_beta_bound(double N, double eta, double gamma, int x_card) {
    require(gamma > 0 && gamma < eta, "Sanov bound needs 0 < gamma < eta");
    double dt = reference_t(eta) - reference_t(gamma);
    return x_card * std::log(N + 1) - 2.0 / 25.0 * dt * dt * N;
}

double sanov_log_beta_bound_refined(double N, double eta, double gamma, int x_card) {
    double a = eta / (2 * eta + 1);
    require(gamma >= 0 && gamma <= 0.25 * a, "refined Sanov bound needs gamma <= eta/(4(2 eta + 1))");
    double r = 0.5 * std::sqrt(a) - std::sqrt(gamma);
    return x_card * std::log(N + 1) - r * r * N / 25.0;
}

double positive_deviation_bound(double N, double eps) { return 5.0 * std::exp(-N * eps * eps / 18.0); }

// ---- theorem lists ----

const std::vector<Theorem>& all_theorems() {
    static const std::vector<Theorem> v = {Theorem::TwoNodeChernoff, Theorem::TwoNodeIndependentA,
                                           Theorem::TwoNodeIndependentB, Theorem::TwoNodeCombined,
                                           Theorem::NNodeA, Theorem::NNodeB, Theorem::NNodeSanov};
    return v;
}

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::TwoNodeChernoff: return "two-node-chernoff";
        case Theorem::TwoNodeIndependentA: return "two-node-independent-a";
        case Theorem::TwoNodeIndependentB: return "two-node-independent-b";
        case Theorem::TwoNodeCombined: return "two-node-combined";
        case Theorem::NNodeA: return "n-node-a";
        case Theorem::NNodeB: return "n-node-b";
        case Theorem::NNodeSanov: return "n-node-sanov";
    }
    return "?";
}

Theorem theorem_from_name(const std::string& s) {
    for (Theorem t : all_theorems())
        if (theorem_name(t) == s) return t;
    throw DomainError("unknown theorem: " + s);
}

namespace {

void check_unit(double v, const char* name) {
    require(v > 0 && v < 1, std::string(name) + " must lie in (0, 1)");
}

void check_common(const BoundParams& p) {
    require(p.eta > 0, "eta must be positive");
    require(p.epsilon > p.eta, "need Delta = epsilon - eta > 0");
    check_unit(p.delta, "delta");
    require(p.kappa > 0, "kappa must be positive");
    require(p.x_card > 0, "|X| must be positive");
}

double g_params(const BoundParams& p) { return p.g_params > 0 ? p.g_params : p.n * std::ldexp(1.0, p.d) - 1; }
double edges(const BoundParams& p) { return p.edges > 0 ? p.edges : double(p.n) * p.d - 1; }

// exp(max(|X|/(kappa mu), W(eta / (96 (2eta+1)(|X| - kappa(1-mu))))))
double ns_first(const BoundParams& p) {
    double c = p.eta / (96.0 * (2 * p.eta + 1) * (p.x_card - p.kappa * (1 - p.mu)));
    return std::exp(std::max(p.x_card / (p.kappa * p.mu), w_ext(c)));
}

// (|X|/e) W(e delta^{|X|/e} / (|X| exp(e/|X|))) with e = eta_N^-
double ns_second(const BoundParams& p, double em) {
    double X = p.x_card;
    double log_arg = std::log(em) + X / em * std::log(p.delta) - std::log(X) - em / X;
    return X / em * w_ext_log(log_arg);
}

// smallest N with N >= ns_second(eta_N^-(N)), at least ns_first
double ns_fixed_point(const BoundParams& p) {
    double n0 = ns_first(p);
    auto excess = [&](double N) {
        double em;
        try {
            em = eta_n_minus(N, p.eta, kappa_prime(p.kappa, N, p.x_card), p.x_card);
        } catch (const DomainError&) {
            return -std::numeric_limits<double>::infinity();
        }
        return N - ns_second(p, em);
    };
    if (excess(n0) >= 0) return n0;
    double lo = n0, hi = 2 * n0;
    while (excess(hi) < 0) {
        lo = hi;
        hi *= 2;
        require(std::isfinite(hi), "N^S: fixed point iteration diverged");
    }
    while (hi - lo > 0.5) {
        double mid = 0.5 * (lo + hi);
        (excess(mid) < 0 ? lo : hi) = mid;
    }
    return hi;
}

std::vector<LabeledQuantity> two_node_chernoff(const BoundParams& p) {
    check_common(p);
    check_unit(p.lambda, "lambda");
    check_unit(p.mu, "mu");
    check_unit(p.big_theta, "Theta");
    auto f = [&](double x) { return f_bound(x, p.form); };
    auto fi = [&](double x) { return f_inverse(x, p.form); };
    auto fti = [&](double x) { return f_tilde_inverse(x, p.form); };
    double gap = f(p.mu * p.eta) - p.lambda * p.eta;
    require(gap > 0, "lambda < F(mu eta)/eta violated");
    double D = p.epsilon - p.eta, el = p.epsilon * p.lambda;
    double th = p.big_theta;
    return {
        {"log24/(F(mu*eta)-lambda*eta)", kLog24 / gap},
        {"[F(eta(1-mu))]^-1 log(48/delta)", fi(p.eta * (1 - p.mu)) * (kLog48 - std::log(p.delta))},
        {"max([F(lambda*eta)]^-1,[F(eps(1-lambda))]^-1) log(48/delta)",
         std::max(fi(p.lambda * p.eta), fi(p.epsilon * (1 - p.lambda))) * (kLog48 - std::log(p.delta))},
        {"[F(Delta)]^-1 log(24/(1-Theta))", fi(D) * (kLog24 - std::log1p(-th))},
        {"[F~(Delta/2)]^-1 log(24/Theta)", fti(D / 2) * (kLog24 - std::log(th))},
        {"[F(Delta/2)]^-1 log(48/delta)", fi(D / 2) * (kLog48 - std::log(p.delta))},
        {"(kappa/(eps*lambda)) W(eps*lambda*Theta^(1/kappa)/kappa)",
         p.kappa / el * w_ext(el * std::pow(th, 1.0 / p.kappa) / p.kappa)},
    };
}

std::vector<LabeledQuantity> two_node_independent_a(const BoundParams& p) {
    check_common(p);
    check_unit(p.lambda, "lambda");
    check_unit(p.mu, "mu");
    double gap = f_bound(p.mu * p.eta, p.form) - p.lambda * p.eta;
    require(gap > 0, "lambda < F(mu eta)/eta violated");
    return {
        {"log24/(F(mu*eta)-lambda*eta)", kLog24 / gap},
        {"[F(min(lambda*eta,eta(1-mu)))]^-1 log(48/delta)",
         f_inverse(std::min(p.lambda * p.eta, p.eta * (1 - p.mu)), p.form) * (kLog48 - std::log(p.delta))},
    };
}

std::vector<LabeledQuantity> two_node_independent_b(const BoundParams& p) {
    require(p.eta > 0, "eta must be positive");
    check_unit(p.delta, "delta");
    check_unit(p.mu, "mu");
    require(p.kappa > 0, "kappa must be positive");
    require(p.x_card > p.kappa * (1 - p.mu), "|X| > kappa(1-mu) violated");
    double n_s = ns_fixed_point(p);
    double em = eta_n_minus(n_s, p.eta, kappa_prime(p.kappa, n_s, p.x_card), p.x_card);
    return {
        {"exp(max(|X|/(kappa*mu),W(eta/(96(2eta+1)(|X|-kappa(1-mu))))))", ns_first(p)},
        {"(|X|/eta_N^-) W(eta_N^- delta^(|X|/eta_N^-)/(|X| exp(eta_N^-/|X|))) at fixed point", ns_second(p, em)},
    };
}

std::vector<LabeledQuantity> two_node_combined(const BoundParams& p) {
    check_common(p);
    check_unit(p.lambda, "lambda");
    check_unit(p.big_theta, "Theta");
    auto out = two_node_independent_b(p);
    auto fi = [&](double x) { return f_inverse(x, p.form); };
    double D = p.epsilon - p.eta, el = p.epsilon * p.lambda, th = p.big_theta;
    std::vector<LabeledQuantity> rest = {
        {"[F(Delta)]^-1 log(24/(1-Theta))", fi(D) * (kLog24 - std::log1p(-th))},
        {"[F~(Delta/2)]^-1 log(24/Theta)", f_tilde_inverse(D / 2, p.form) * (kLog24 - std::log(th))},
        {"[F(Delta/2)]^-1 log(48/delta)", fi(D / 2) * (kLog48 - std::log(p.delta))},
        {"[F(eps(1-lambda))]^-1 log(48/delta)", fi(p.epsilon * (1 - p.lambda)) * (kLog48 - std::log(p.delta))},
        {"(kappa/(eps*lambda)) W(eps*lambda*Theta^(1/kappa)/kappa)",
         p.kappa / el * w_ext(el * std::pow(th, 1.0 / p.kappa) / p.kappa)},
    };
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

void check_n_node(const BoundParams& p) {
    check_common(p);
    check_unit(p.theta, "theta");
    check_unit(p.big_theta, "Theta");
    require(p.n > 2 * p.d + 1, "n > 2d + 1 violated");
    require(p.m >= 1 && p.m_hat >= 1, "m and m_hat must be >= 1");
    require(p.L >= 1, "L must be a positive integer");
    require(g_params(p) > p.n, "|G| > n violated");
    require(edges(p) > 0, "|E(G)| must be positive");
}

std::vector<LabeledQuantity> n_node_a(const BoundParams& p) {
    check_n_node(p);
    require(p.zeta > 0, "zeta must be positive");
    double D = p.epsilon - p.eta, th = p.theta, Th = p.big_theta;
    double c = 3.0 * p.kappa * (g_params(p) - p.n);
    double E = edges(p), Sig = binom(p.n, p.d);
    double pow2s = std::ldexp(1.0, p.d);
    double m1 = p.m / (1 - th);
    return {
        {"N_n(zeta/3,delta/6)", n_sub_n(p.zeta / 3, p.delta / 6, p.n, p.d)},
        {"m(1-theta)^-1 [F(Delta)]^-1 log(24/(1-Theta))", m1 * f_inverse(D, p.form) * (kLog24 - std::log1p(-Th))},
        {"(3kappa(|G|-n)/zeta) W(zeta Theta^(|E|/(kappa(|G|-n)))/(3kappa(|G|-n)))",
         c / p.zeta * w_ext(p.zeta * std::pow(Th, E / (p.kappa * (g_params(p) - p.n))) / c)},
        {"3/((1-theta)theta^2) log(3|E| Sigma 2^sigma/delta)",
         3.0 / ((1 - th) * th * th) * std::log(3.0 * E * Sig * pow2s / p.delta)},
        {"m/(1-theta) max([F~(Delta/2)]^-1 log(24/(1-Theta)),[F(Delta/2)]^-1 log(72|E| Sigma/delta))",
         m1 * std::max(f_tilde_inverse(D / 2, p.form) * (kLog24 - std::log1p(-Th)),
                       f_inverse(D / 2, p.form) * std::log(72.0 * E * Sig / p.delta))},
    };
}

std::vector<LabeledQuantity> n_node_b(const BoundParams& p) {
    check_n_node(p);
    check_unit(p.mu, "mu");
    double D = p.epsilon - p.eta, th = p.theta, Th = p.big_theta;
    double E = edges(p), Sig = binom(p.n, p.d), G = g_params(p);
    double pow2s = std::ldexp(1.0, p.d);
    double fme = f_bound(p.mu * p.eta, p.form);
    double mh = p.m_hat / (1 - th);
    double L = p.L;
    double c = 4.0 * p.m_hat * p.kappa * (G - p.n) / ((1 - th) * L * fme);
    return {
        {"max(m(1-theta)^-1 [F(Delta)]^-1 log(24/(1-Theta)),N_n(L(1-theta)F(mu*eta)/(4m_hat),delta/10))",
         std::max(p.m / (1 - th) * f_inverse(D, p.form) * (kLog24 - std::log1p(-Th)),
                  n_sub_n(L * (1 - th) * fme / (4 * p.m_hat), p.delta / 10, p.n, p.d))},
        {"3/((1-theta)theta^2) log(5|E| Sigma 2^sigma/delta)",
         3.0 / ((1 - th) * th * th) * std::log(5.0 * E * Sig * pow2s / p.delta)},
        {"m_hat/(1-theta) max([F~(Delta/2)]^-1 log(48/F(mu*eta)),[F(Delta/2)]^-1 log(120|E| Sigma/delta))",
         mh * std::max(f_tilde_inverse(D / 2, p.form) * std::log(48.0 / fme),
                       f_inverse(D / 2, p.form) * std::log(120.0 * E * Sig / p.delta))},
        {"3/((1-theta)theta^2) log(5L Sigma 2^sigma/delta)",
         3.0 / ((1 - th) * th * th) * std::log(5.0 * L * Sig * pow2s / p.delta)},
        {"m_hat/(1-theta) log(120 sigma L/delta) [F(eta(1-mu))]^-1",
         mh * std::log(120.0 * p.d * L / p.delta) * f_inverse(p.eta * (1 - p.mu), p.form)},
        {"4 m_hat log24/(F(mu*eta)(1-theta))", 4.0 * p.m_hat * kLog24 / (fme * (1 - th))},
        {"(4 m_hat kappa(|G|-n)/((1-theta)L F(mu*eta))) W(Theta^(|E|/((|G|-n)kappa))/that)",
         c * w_ext(std::pow(Th, E / ((G - p.n) * p.kappa)) / c)},
    };
}

std::vector<LabeledQuantity> n_node_sanov(const BoundParams& p) {
    check_n_node(p);
    double D = p.epsilon - p.eta, th = p.theta, Th = p.big_theta;
    double E = edges(p), Sig = binom(p.n, p.d), G = g_params(p);
    double X = p.x_card, L = p.L, eta = p.eta;
    double a = eta / (2 * eta + 1);
    double pow2s = std::ldexp(1.0, p.d);
    double K = p.kappa * (G - p.n) - L * X;
    require(K > 0, "kappa(|G|-n) - L|X| > 0 violated");
    double b = 16.0 * (2 * eta + 1) * X;
    double third_arg = eta / (b * std::exp(eta / b) * std::pow(p.delta / (3 * L), 1.0 / X));
    double c = 800.0 * p.m_hat * (2 * eta + 1) * K / ((1 - th) * L * eta);
    return {
        {"max(m(1-theta)^-1 [F(Delta)]^-1 log(24/(1-Theta)),N_n((1-theta)/m_hat L/800 eta/(2eta+1),delta/6))",
         std::max(p.m / (1 - th) * f_inverse(D, p.form) * (kLog24 - std::log1p(-Th)),
                  n_sub_n((1 - th) / p.m_hat * L / 800.0 * a, p.delta / 6, p.n, p.d))},
        {"3/(theta^2(1-theta)) log(3|E| Sigma 2^sigma/delta)",
         3.0 / ((1 - th) * th * th) * std::log(3.0 * E * Sig * pow2s / p.delta)},
        {"16|X|(2eta+1)m_hat/(eta(1-theta)) W(eta/(16(2eta+1)|X| exp(eta/(16(2eta+1)|X|)) (delta/(3L))^(1/|X|)))",
         b * p.m_hat / (eta * (1 - th)) * w_ext(third_arg)},
        {"(800 m_hat(2eta+1)K/((1-theta)L eta)) W(Theta^(|E|/K)/that), K=kappa(|G|-n)-L|X|",
         c * w_ext(std::pow(Th, E / K) / c)},
    };
}

}  // namespace

std::vector<LabeledQuantity> theorem_quantities(Theorem t, const BoundParams& p) {
    switch (t) {
        case Theorem::TwoNodeChernoff: return two_node_chernoff(p);
        case Theorem::TwoNodeIndependentA: return two_node_independent_a(p);
        case Theorem::TwoNodeIndependentB: return two_node_independent_b(p);
        case Theorem::TwoNodeCombined: return two_node_combined(p);
        case Theorem::NNodeA: return n_node_a(p);
        case Theorem::NNodeB: return n_node_b(p);
        case Theorem::NNodeSanov: return n_node_sanov(p);
    }
    throw DomainError("unknown theorem");
}

double theorem_sample_size(Theorem t, const BoundParams& p) {
    double best = 0;
    for (const auto& q : theorem_quantities(t, p)) best = std::max(best, q.value);
    return best;
}

}  // namespace betanet
