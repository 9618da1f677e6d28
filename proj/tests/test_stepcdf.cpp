#include <doctest.h>

#include <cmath>
#include <random>

#include "betanet/errors.hpp"
#include "betanet/simplex.hpp"
#include "betanet/stepcdf.hpp"
#include "betanet/typespace.hpp"

using namespace betanet;

namespace {

double h(std::initializer_list<double> p) {
    double s = 0;
    for (double x : p)
        if (x > 0) s -= x * std::log(x);
    return s;
}

// brute force: nested loops, entropies from frequencies, lgamma multinomial
struct BruteBeta {
    std::vector<std::pair<double, double>> pts;  // (tau, prob)
    BruteBeta(int N, double eta) {
        double lo = 0, hi = 0.25;
        for (int i = 0; i < 300; ++i) {
            double m = 0.5 * (lo + hi);
            double t = h({0.5, 0.5}) * 2 - h({0.25 + m, 0.25 - m, 0.25 - m, 0.25 + m});
            (t < eta ? lo : hi) = m;
        }
        double t = 0.5 * (lo + hi);
        double p[4] = {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
        for (int a = 0; a <= N; ++a)
            for (int b = 0; a + b <= N; ++b)
                for (int c = 0; a + b + c <= N; ++c) {
                    int d = N - a - b - c;
                    double f[4] = {double(a) / N, double(b) / N, double(c) / N, double(d) / N};
                    double tau = h({f[0] + f[1], f[2] + f[3]}) + h({f[0] + f[2], f[1] + f[3]}) -
                                 h({f[0], f[1], f[2], f[3]});
                    double lp = std::lgamma(N + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
                                std::lgamma(c + 1.0) - std::lgamma(d + 1.0) + a * std::log(p[0]) +
                                b * std::log(p[1]) + c * std::log(p[2]) + d * std::log(p[3]);
                    pts.emplace_back(tau, std::exp(lp));
                }
    }
    double at(double g) const {
        double s = 0;
        for (auto& [t, w] : pts)
            if (t <= g) s += w;
        return s;
    }
};

}  // namespace

TEST_SUITE("stepcdf") {

TEST_CASE("single steps") {
    StepCdf c;
    c.account_for_event(0.3, 0.5);
    CHECK(c.cumulative_at(0.4) == 0.0);
    CHECK(c.cumulative_at(0.5) == doctest::Approx(0.3));
    StepCdf d;
    d.account_for_event(0.1, 0.2);
    d.account_for_event(0.1, 0.2);
    CHECK(d.cumulative_at(0.2) == doctest::Approx(0.2));
    d.account_for_event(0.0, 0.1);
    CHECK(d.cumulative_at(0.15) == 0.0);
    CHECK_THROWS(d.account_for_event(-0.1, 0.3));
}

TEST_CASE("queries, finalized or not") {
    StepCdf c;
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) c.account_for_event(u(g) / 200, u(g));
    StepCdf f = c;
    f.finalize();
    double lo = c.jumps().begin()->first, hi = c.jumps().rbegin()->first;
    CHECK(c.cumulative_at(lo - 1e-3) == 0.0);
    CHECK(f.cumulative_at(hi) == doctest::Approx(f.total_mass()).epsilon(1e-14));
    CHECK(f.cumulative_at(hi + 1) == doctest::Approx(f.total_mass()).epsilon(1e-14));
    double prev = 0;
    for (int i = 0; i <= 1000; ++i) {
        double v = i / 1000.0;
        double a = c.cumulative_at(v), b = f.cumulative_at(v);
        CHECK(std::abs(a - b) <= 1e-14);
        CHECK(b >= prev - 1e-15);
        prev = b;
    }
    for (auto& [k, m] : f.jumps()) {
        // closed convention: the jump at k is included at k, not just below
        CHECK(f.cumulative_at(k) - f.cumulative_at(std::nextafter(k, -1.0)) == doctest::Approx(m).epsilon(1e-9));
    }
}

TEST_CASE("merge") {
    StepCdf a, b, all;
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 500; ++i) {
        double w = u(g), v = std::round(u(g) * 50) / 50;
        (i % 2 ? a : b).account_for_event(w, v);
        all.account_for_event(w, v);
    }
    StepCdf a0 = a;
    a0.merge(StepCdf{});
    CHECK(a0.jumps() == a.jumps());
    StepCdf ab = a, ba = b;
    ab.merge(b);
    ba.merge(a);
    for (int i = 0; i <= 100; ++i) {
        double v = i / 100.0 + 0.001;
        CHECK(std::abs(ab.cumulative_at(v) - ba.cumulative_at(v)) <= 1e-12);
        CHECK(std::abs(ab.cumulative_at(v) - all.cumulative_at(v)) <= 1e-12);
    }
}

TEST_CASE("exact beta: N = 1 is a single jump at 0") {
    // one record always gives a point-mass table, which is its own product
    for (double eta : {0.01, 0.1}) {
        auto c = exact_beta_cdf(1, eta);
        REQUIRE(c.size() == 1);
        CHECK(c.jumps().begin()->first == 0.0);
        CHECK(c.cumulative_at(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact beta: N = 4 mass at 0 is the product types") {
    double eta = 0.01;
    auto p = reference_distribution(eta).cells();
    int product = 0, total = 0;
    double mass = 0;
    dfs_process(TypePrefix::root(4, 4), [&](std::span<const int> c) {
        ++total;
        if (c[0] * c[3] == c[1] * c[2]) {
            ++product;
            mass += emission_probability(c, p);
        }
    });
    CHECK(total == 35);
    // a d == b c: 17 of the 35 (brute-force count, not 25)
    CHECK(product == 17);
    auto cdf = exact_beta_cdf(4, eta);
    CHECK(cdf.cumulative_at(0.0) == doctest::Approx(mass).epsilon(1e-12));
}

TEST_CASE("exact beta matches brute force") {
    std::mt19937_64 g(5);
    for (int N : {7, 20, 33}) {
        for (double eta : {0.01, 0.1}) {
            BruteBeta bf(N, eta);
            auto c = exact_beta_cdf(N, eta);
            CHECK(c.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
            std::uniform_real_distribution<double> u(0, 0.7);
            for (int i = 0; i < 200; ++i) {
                double x = u(g);
                CHECK(std::abs(c.cumulative_at(x) - bf.at(x)) <= 1e-11);
            }
        }
    }
}

TEST_CASE("parallel equals serial") {
    auto s1 = exact_beta_cdf(50, 0.01);
    for (int m : {1, 3, 8}) {
        auto s2 = exact_beta_cdf_parallel(50, 0.01, 4, m);
        std::mt19937_64 g(9 + m);
        std::uniform_real_distribution<double> u(0, 0.7);
        for (int i = 0; i < 1000; ++i) {
            double x = u(g);
            REQUIRE(std::abs(s1.cumulative_at(x) - s2.cumulative_at(x)) <= 1e-12);
        }
    }
}

TEST_CASE("modulus 4 at N = 3 puts one root child in each class") {
    auto root = TypePrefix::root(3, 4);
    std::vector<int> leaves;
    for (int k = 0; k < 4; ++k) {
        auto cls = children_last_entry_mod(root, k, 4);
        REQUIRE(cls.size() == 1);
        CHECK(cls[0].data == std::vector<int>{k});
        int n = 0;
        dfs_process(cls[0], [&](std::span<const int>) { ++n; });
        leaves.push_back(n);
    }
    // C(3 - k + 2, 2)
    CHECK(leaves == std::vector<int>{10, 6, 3, 1});
}

TEST_CASE("more dependence, less mass below gamma") {
    auto a = exact_beta_cdf(30, 0.01), b = exact_beta_cdf(30, 0.05);
    for (int i = 0; i < 100; ++i) {
        double g = 0.01 * i / 100.0;
        CHECK(b.cumulative_at(g) <= a.cumulative_at(g) + 1e-15);
    }
}

TEST_CASE("type tau agrees with float formula") {
    auto kl = klogk_table(40);
    dfs_process(TypePrefix::root(40, 4), [&](std::span<const int> c) {
        double f[4];
        for (int i = 0; i < 4; ++i) f[i] = c[i] / 40.0;
        double ref = h({f[0] + f[1], f[2] + f[3]}) + h({f[0] + f[2], f[1] + f[3]}) - h({f[0], f[1], f[2], f[3]});
        CHECK(std::abs(type_tau(c, kl) - std::max(ref, 0.0)) <= 1e-13);
    });
}

}  // TEST_SUITE
