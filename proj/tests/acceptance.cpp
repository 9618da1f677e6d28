// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#ifdef _OPENMP
#include <omp.h>
#endif
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "betanet/bayesnet.hpp"
#include "betanet/betatable.hpp"
#include "betanet/bounds.hpp"
#include "betanet/experiment.hpp"
#include "betanet/iproj.hpp"
#include "betanet/mcint.hpp"
#include "betanet/numeric.hpp"
#include "betanet/score.hpp"
#include "betanet/simplex.hpp"
#include "betanet/stepcdf.hpp"
#include "betanet/typespace.hpp"

using namespace betanet;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void need(bool c, const std::string& what) {
        if (!c) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > budget_s) o.need(false, "runtime " + std::to_string(s) + " s over budget");
    if (!o.ok) ++failures;
    std::printf("%s %d %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, s, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double naive_h(std::initializer_list<double> p) {
    double s = 0;
    for (double x : p)
        if (x > 0) s -= x * std::log(x);
    return s;
}

// multinomial probability with lgamma, independent of the library's emission code
double lgamma_emission(std::span<const int> c, const std::vector<double>& p) {
    int N = 0;
    double l = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        N += c[i];
        l -= std::lgamma(c[i] + 1.0);
        if (c[i] > 0) l += c[i] * std::log(p[i]);
    }
    return std::exp(l + std::lgamma(N + 1.0));
}

std::vector<double> uniform_path_cells(double eta) {
    double lo = 0, hi = 0.25;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        double tau = 2 * std::log(2.0) - naive_h({0.25 + m, 0.25 - m, 0.25 - m, 0.25 + m});
        (tau < eta ? lo : hi) = m;
    }
    double t = 0.5 * (lo + hi);
    return {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::shared_ptr<const BetaTable> g_table;  // eta = 0.01, default grids, 75 and 150 held out

}  // namespace

int main() {
    criterion(1, "exact CDF correctness", 10, [] {
        Outcome o;
        for (double eta : {0.01, 0.1}) {
            auto p = uniform_path_cells(eta);
            for (int N : {1, 4, 10, 25, 50}) {
                auto c = exact_beta_cdf(N, eta);
                o.need(std::abs(c.total_mass() - 1) <= 1e-9, "mass at N=" + std::to_string(N));
            }
            auto one = exact_beta_cdf(1, eta);
            o.need(one.size() == 1 && std::abs(one.jumps().begin()->first - std::log(2.0)) <= 1e-13 &&
                       std::abs(one.total_mass() - 1) <= 1e-12,
                   "N=1 single jump at ln 2 (got " + std::to_string(one.size()) + " jump(s), first at " +
                       num(one.jumps().begin()->first) + ")");
            int product = 0;
            double mass = 0;
            dfs_process(TypePrefix::root(4, 4), [&](std::span<const int> c) {
                if (c[0] * c[3] == c[1] * c[2]) {
                    ++product;
                    mass += lgamma_emission(c, p);
                }
            });
            o.need(product == 25, "25 product types at N=4 (found " + std::to_string(product) + ")");
            double got = exact_beta_cdf(4, eta).cumulative_at(0.0);
            o.need(std::abs(got - mass) <= 1e-12, "N=4 mass at 0: " + num(got) + " vs " + num(mass));
        }
        return o;
    });

    criterion(2, "parallel equals serial", 120, [] {
        Outcome o;
        auto s = exact_beta_cdf(100, 0.01);
#ifdef _OPENMP
        omp_set_num_threads(8);
#endif
        auto p = exact_beta_cdf_parallel(100, 0.01, 4, 8);
        std::mt19937_64 g(2024);
        std::uniform_real_distribution<double> u(0, std::log(2.0));
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            double x = u(g);
            worst = std::max(worst, std::abs(s.cumulative_at(x) - p.cumulative_at(x)));
        }
        o.need(worst <= 1e-12, "max diff " + num(worst));
        o.detail = o.ok ? "max diff " + num(worst) : o.detail;
        return o;
    });

    criterion(3, "Robbins lattice sum bounds exact beta", 600, [] {
        Outcome o;
        std::vector<double> ratios;
        for (int N : {25, 50, 100, 200}) {
            auto ex = exact_beta_cdf(N, 0.1);
            auto rb = robbins_lattice_cdf(N, 0.1);
            ex.finalize();
            rb.finalize();
            long bad = 0;
            for (auto& [k, m] : ex.jumps())
                if (rb.cumulative_at(k) < ex.cumulative_at(k) * (1 - 1e-12)) ++bad;
            o.need(bad == 0, std::to_string(bad) + " jumps violate at N=" + std::to_string(N));
            ratios.push_back(rb.cumulative_at(0.05) / ex.cumulative_at(0.05));
        }
        for (size_t i = 1; i < ratios.size(); ++i) o.need(ratios[i] < ratios[i - 1], "ratio not decreasing");
        if (o.ok) {
            o.detail = "ratios at eta/2:";
            for (double r : ratios) o.detail += " " + num(r);
        }
        return o;
    });

    criterion(4, "Monte Carlo accuracy", 1800, [] {
        Outcome o;
        struct Case {
            int N;
            double eta, gamma;
        };
        std::string summary;
        for (Case c : {Case{50, 0.01, 0.001}, Case{100, 0.01, 0.005}, Case{200, 0.01, 0.002}}) {
            double ex = exact_beta_cdf(c.N, c.eta).cumulative_at(c.gamma);
            std::vector<char> hit(50);
#pragma omp parallel for schedule(dynamic)
            for (int s = 0; s < 50; ++s) {
                double e = estimate_beta(c.N, c.eta, c.gamma, McParams{}, mix_seed(77, s));
                hit[s] = std::abs(e / ex - 1) <= 0.1;
            }
            int k = int(std::count(hit.begin(), hit.end(), 1));
            o.need(k >= 45, "N=" + std::to_string(c.N) + ": " + std::to_string(k) + "/50");
            summary += (summary.empty() ? "" : ", ") + std::to_string(k) + "/50";
        }
        if (o.ok) o.detail = "within 10%: " + summary;
        return o;
    });

    criterion(5, "unit Jacobian of the coordinate map", 1, [] {
        Outcome o;
        std::mt19937_64 g(5);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            double x[3] = {u(g), u(g), 0};
            double lim = std::min({x[0] * x[1], (1 - x[0]) * x[1], x[0] * (1 - x[1]), (1 - x[0]) * (1 - x[1])});
            x[2] = (u(g) - 0.5) * lim;
            double J[3][3], h = 1e-6;
            for (int j = 0; j < 3; ++j) {
                double a[3] = {x[0], x[1], x[2]}, b[3] = {x[0], x[1], x[2]};
                a[j] += h;
                b[j] -= h;
                auto qa = coord_map(a[0], a[1], a[2]), qb = coord_map(b[0], b[1], b[2]);
                for (int r = 0; r < 3; ++r) J[r][j] = (qa[r] - qb[r]) / (2 * h);
            }
            double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
            worst = std::max(worst, std::abs(std::abs(det) - 1));
        }
        o.need(worst <= 1e-8, "max |det|-1 = " + num(worst));
        return o;
    });

    criterion(6, "gamma0 power law", 5, [] {
        Outcome o;
        std::vector<double> lx, ly;
        for (int N : generate_n_list()) {
            double g = gamma_zero(N);
            double ell = t_gamma_plus(TPath::uniform(), g) - t_gamma_minus(TPath::uniform(), g);
            o.need(std::abs(ell - 1.0 / N) <= 1e-9, "ell at N=" + std::to_string(N));
            if (N >= 50 && N <= 5000) {
                lx.push_back(std::log(N));
                ly.push_back(std::log(g));
            }
        }
        double s = regression_slope(lx, ly);
        o.need(std::abs(s + 2) <= 0.05, "slope " + num(s));
        if (o.ok) o.detail = "slope " + num(s);
        return o;
    });

    criterion(7, "interpolation fidelity on held-out N", 900, [] {
        Outcome o;
        TableGrids grids;
        grids.n_list.erase(std::remove_if(grids.n_list.begin(), grids.n_list.end(),
                                          [](int n) { return n == 75 || n == 150; }),
                           grids.n_list.end());
        BuildReport rep;
        g_table = std::make_shared<const BetaTable>(build_table(0.01, grids, BuildOptions{}, &rep));
        // gammas at ticks between the tabulated ones
        TableGrids mid;
        mid.n_list = {10000};
        mid.lower_ticks = {0.05, 0.25, 0.45, 0.625, 0.725};
        mid.upper_points = 0;
        auto plan = plan_cells(0.01, mid);
        double worst = 0;
        for (int N : {75, 150}) {
            auto cdf = exact_beta_cdf(N, 0.01);
            for (auto& c : plan) {
                double ex = std::log(cdf.cumulative_at(std::max(c.gamma, gamma_zero(N))));
                double in = interpolate_log_beta(*g_table, N, c.gamma);
                worst = std::max(worst, std::abs(in - ex));
            }
        }
        o.need(plan.size() == 5, "expected 5 mid-tick gammas");
        o.need(worst <= 0.5, "max error " + num(worst) + " nats");
        if (o.ok)
            o.detail = "max error " + num(worst) + " nats; " + std::to_string(rep.unconverged) + " unconverged MC cells";
        return o;
    });

    criterion(8, "two-node score decomposition", 60, [] {
        Outcome o;
        if (!g_table) {
            o.need(false, "no table");
            return o;
        }
        ScoreConfig cfg;
        cfg.table = g_table;
        std::mt19937_64 g(8);
        std::uniform_int_distribution<int> u(0, 300);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            std::vector<long> c(4);
            for (auto& x : c) x = u(g);
            auto counts = EmpiricalCounts::from_counts(2, c);
            double N = double(counts.N);
            double f[4];
            for (int k = 0; k < 4; ++k) f[k] = c[k] / N;
            double tau = naive_h({f[0] + f[2], f[1] + f[3]}) + naive_h({f[0] + f[1], f[2] + f[3]}) -
                         naive_h({f[0], f[1], f[2], f[3]});
            tau = std::max(tau, 0.0);
            double lb = interpolate_log_beta(*g_table, int(N), std::max(tau, gamma_zero(int(N))));
            double want = -N * tau + cfg.kappa * std::log(N) - lb;
            double got = score(counts, Dag(2), cfg).total - score(counts, Dag(2, {{}, {0}}), cfg).total;
            worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
        }
        o.need(worst <= 1e-9, "max rel diff " + num(worst));
        return o;
    });

    criterion(9, "desk-scale recovery", 600, [] {
        Outcome o;
        if (!g_table) {
            o.need(false, "no table");
            return o;
        }
        ScoreConfig cfg;
        cfg.table = g_table;
        cfg.kappa = 0.5;
        auto ind = run_recovery(two_node_network(0), 500, 100, 9001, 1, cfg);
        auto dep = run_recovery(two_node_network(0.1), 500, 100, 9002, 1, cfg);
        o.need(ind.recovered >= 95, "independent " + std::to_string(ind.recovered) + "/100");
        o.need(dep.recovered >= 95, "dependent " + std::to_string(dep.recovered) + "/100");
        if (o.ok)
            o.detail = "independent " + std::to_string(ind.recovered) + "/100, dependent " +
                       std::to_string(dep.recovered) + "/100";
        return o;
    });

    criterion(10, "bound-function laws", 30, [] {
        Outcome o;
        double prev = 0;
        for (int i = 1; i <= 1000; ++i) {
            double v = f_tilde(10.0 * i / 1000);
            o.need(v >= prev, "F~ not increasing");
            prev = v;
        }
        prev = 1e300;
        for (int i = 1; i <= 1000; ++i) {
            double v = script_f_tilde_n(100, 10.0 * i / 1000);
            o.need(v < prev, "F~_N not decreasing");
            prev = v;
        }
        for (double D : {0.01, 0.3, 2.0})
            for (double G : {1e-6, 0.01, 1.0, 12.0}) {
                double N = script_g_inverse(D, G);
                o.need(std::abs(script_f_n(N, D) - G) <= 1e-10 * std::max(1.0, G), "G inverse round trip");
            }
        std::mt19937_64 g(10);
        std::uniform_real_distribution<double> u(-9 * std::log(10.0), -1.0);
        for (int i = 0; i < 1000; ++i) {
            double x = std::exp(u(g));
            double y = script_w(x);
            o.need(std::abs(y * std::exp(-y) - x) <= 1e-12, "script_w round trip");
        }
        double eta = 0.1, lim = eta / (144 * (2 * eta + 1));
        double em = eta_n_minus(1e9, eta, kappa_prime(0.5, 1e9));
        o.need(std::abs(em / lim - 1) < 0.01, "eta_N^- limit " + num(em) + " vs " + num(lim));

        BoundParams base;
        base.lambda = 0.5 * f_bound(base.mu * base.eta) / base.eta;
        auto sweep = [](double a, double b, const std::function<double(double)>& f) {
            std::vector<double> lx, ly;
            for (int i = 0; i < 10; ++i) {
                double x = a * std::pow(b / a, i / 9.0);
                lx.push_back(std::log(x));
                ly.push_back(std::log(f(x)));
            }
            return regression_slope(lx, ly);
        };
        double s_zeta = sweep(1e-5, 1e-4, [&](double z) {
            BoundParams p = base;
            p.zeta = z;
            return theorem_sample_size(Theorem::NNodeA, p);
        });
        double s_m = sweep(1e5, 1e7, [&](double m) {
            BoundParams p = base;
            p.m = m;
            return theorem_sample_size(Theorem::NNodeA, p);
        });
        double s_chern = sweep(1e-3, 1e-2, [&](double e) {
            BoundParams p = base;
            p.epsilon = e;
            p.eta = e / 2;
            p.lambda = 0.5 * f_bound(p.mu * p.eta) / p.eta;
            return theorem_sample_size(Theorem::TwoNodeIndependentA, p);
        });
        double s_sanov = sweep(1e-3, 1e-2, [&](double e) {
            BoundParams p = base;
            p.epsilon = e;
            p.eta = e / 2;
            return theorem_sample_size(Theorem::TwoNodeIndependentB, p);
        });
        o.need(std::abs(s_zeta + 2) <= 0.15, "zeta exponent " + num(s_zeta));
        o.need(std::abs(s_m - 1) <= 0.15, "m exponent " + num(s_m));
        o.need(std::abs(s_chern + 4) <= 0.15, "two-node Chernoff-side exponent " + num(s_chern));
        o.need(std::abs(s_sanov + 2) <= 0.15, "two-node Sanov-side exponent " + num(s_sanov));
        if (o.ok)
            o.detail = "exponents " + num(s_zeta) + ", " + num(s_m) + ", " + num(s_chern) + ", " + num(s_sanov);
        return o;
    });

    criterion(11, "I-projection study", 30, [] {
        Outcome o;
        auto a = kl_curve(0.05, 0);
        o.need(a.minima.size() == 1 && std::abs(a.minima[0].x - 0.5) <= 1e-6, "eta=0.05 unique minimum at 0.5");
        auto b = kl_curve(0.4, 0);
        o.need(b.minima.size() == 2 && std::abs(b.minima[0].x + b.minima[1].x - 1) <= 1e-6,
               "eta=0.4 two symmetric minima");
        double worst = 0;
        for (int i = 1; i < 100; ++i) {
            double z = i / 100.0;
            auto [one, y] = yz_solutions(z);
            worst = std::max({worst, std::abs(yz_residual(one, z)), std::abs(yz_residual(y, z))});
        }
        o.need(worst <= 1e-10, "yz residual " + num(worst));
        const double expected = 0.11094054602671935;
        double eta0 = conjecture_threshold().eta;
        char buf[160];
        std::snprintf(buf, sizeof buf, "threshold eta0 = %.17g, expected %.17g (diff %.3g)", eta0, expected,
                      eta0 - expected);
        o.need(std::abs(eta0 - expected) <= 1e-9, buf);
        return o;
    });

    criterion(12, "type-space and DAG combinatorics", 5, [] {
        Outcome o;
        for (int N = 0; N <= 50; ++N)
            for (int n = 1; n <= 6; ++n) {
                // C(N+n-1, n-1) by Pascal's rule
                std::vector<std::uint64_t> row(1, 1);
                for (int r = 1; r <= N + n - 1; ++r) {
                    std::vector<std::uint64_t> nxt(r + 1, 1);
                    for (int k = 1; k < r; ++k) nxt[k] = row[k - 1] + row[k];
                    row = nxt;
                }
                o.need(count_types(N, n) == row[n - 1], "count_types");
            }
        o.need(enumerate_dags(2, 1).size() == 3, "a2");
        o.need(enumerate_dags(3, 2).size() == 25, "a3");
        o.need(enumerate_dags(4, 3).size() == 543, "a4");
        return o;
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures ? 1 : 0;
}
