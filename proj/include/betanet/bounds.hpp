#pragma once

#include <string>
#include <vector>

namespace betanet {

// Lambert-type functions.
// script_w(x) is the y >= 1 root of y e^{-y} = x, i.e. -W_{-1}(-x), for x in (0, 1/e].
double script_w(double x);
// same root with x given by its logarithm, so x far below DBL_MIN still works
double script_w_log(double log_x);
// principal branch, x >= -1/e
double lambert_w0(double x);
// lower branch, -1/e <= x < 0
double lambert_wm1(double x);

// 3 * 64 * (1 + log 2)^2
double k1_constant();

struct BoundForm {
    // true: 1/(12 exp W(D/8)) in the second slot of F~; false: 1/(12 W(D/8))
    bool exp_form = true;
};

// F~(D) = min(D^2/K1, 1/(12 exp W(D/8))). For D/8 > 1/e the Lambert slot has
// no value and only the quadratic term remains.
double f_tilde(double delta_arg, BoundForm form = {});
double f_bound(double delta_arg, BoundForm form = {});  // min(1/24, F~)
double f_inverse(double delta_arg, BoundForm form = {});        // [F(D)]^{-1}
double f_tilde_inverse(double delta_arg, BoundForm form = {});  // [F~(D)]^{-1}

// script F_N(D) = 24 exp(-N F(D)); the tilde variant uses F~. N is real so the
// same function serves as G_D(N).
double script_f_n(double N, double delta_arg, BoundForm form = {});
double script_f_tilde_n(double N, double delta_arg, BoundForm form = {});
// G_D^{-1}(Gamma) = (log 24 - log Gamma) [F(D)]^{-1}
double script_g_inverse(double delta_arg, double big_gamma, BoundForm form = {});
double script_g_tilde_inverse(double delta_arg, double big_gamma, BoundForm form = {});
// the D with F~_N(D) = Gamma, for 0 < Gamma < 24
double script_f_tilde_n_inverse(double N, double big_gamma, BoundForm form = {});

// sample size for the plug-in entropy estimate, two binary variables
double n_plogp(double epsilon, double delta);
// the n-node version; needs n > 2d + 1
double n_sub_n(double epsilon, double delta, int n, int d);

// F(mu eta) - log(24)/N
double gamma_max(double N, double mu, double eta);
// kappa - |X| log((N+1)/N) / log N
double kappa_prime(double kappa, double N, int x_card = 4);
double eta_n_minus(double N, double eta, double kappa_prime, int x_card = 4);

// upper bounds on log beta_N(gamma) for the reference at eta, 0 < gamma < eta
double sanov_log_beta_bound(double N, double eta, double gamma, int x_card = 4);
// needs gamma <= eta / (4 (2 eta + 1))
double sanov_log_beta_bound_refined(double N, double eta, double gamma, int x_card = 4);
// tail bound for the plug-in estimate overshooting by eps
double positive_deviation_bound(double N, double eps);

struct BoundParams {
    double epsilon = 0.1;
    double eta = 0.05;
    double delta = 0.05;
    double zeta = 0.1;
    double kappa = 0.5;
    double lambda = 0.5;
    double mu = 0.5;
    double theta = 0.5;
    double big_theta = 0.5;
    int n = 10;
    int d = 2;
    int L = 1;
    double m = 4;
    double m_hat = 4;
    int x_card = 4;
    // |G| (free parameters) and |E(G)|; 0 means the in-degree-d worst case,
    // n 2^d - 1 and n d - 1
    double g_params = 0;
    double edges = 0;
    BoundForm form;
};

enum class Theorem {
    TwoNodeChernoff,
    TwoNodeIndependentA,  // N^C
    TwoNodeIndependentB,  // N^S
    TwoNodeCombined,
    NNodeA,
    NNodeB,
    NNodeSanov,
};

struct LabeledQuantity {
    std::string label;
    double value;
};

const std::vector<Theorem>& all_theorems();
std::string theorem_name(Theorem t);
Theorem theorem_from_name(const std::string& s);

// every lower bound listed for the theorem, in the order stated
std::vector<LabeledQuantity> theorem_quantities(Theorem t, const BoundParams& p);
// their maximum
double theorem_sample_size(Theorem t, const BoundParams& p);

}  // namespace betanet
