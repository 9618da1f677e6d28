#include <doctest.h>

#include <cmath>

#include "betanet/errors.hpp"
#include "betanet/iproj.hpp"
#include "betanet/simplex.hpp"

using namespace betanet;

namespace {
// KL of the equal-marginal product against p^eta, written out by hand
double kl0(double eta, double x) {
    double t = reference_t(eta);
    double q[4] = {x * x, x * (1 - x), x * (1 - x), (1 - x) * (1 - x)};
    double p[4] = {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
    double s = 0;
    for (int i = 0; i < 4; ++i) s += q[i] * std::log(q[i] / p[i]);
    return s;
}
}  // namespace

TEST_SUITE("iproj") {

TEST_CASE("gamma = 0 curve values") {
    for (double eta : {0.05, 0.2, 0.4})
        for (double x : {0.01, 0.2, 0.5, 0.77, 0.99}) CHECK(iproj_kl(eta, 0, x) == doctest::Approx(kl0(eta, x)).epsilon(1e-12));
}

TEST_CASE("gamma = 0 minima") {
    auto c = kl_curve(0.05, 0, 2000);
    CHECK(c.method == "exact");
    REQUIRE(c.minima.size() == 1);
    CHECK(c.minima[0].x == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c.maxima.empty());

    auto d = kl_curve(0.4, 0, 2000);
    REQUIRE(d.minima.size() == 2);
    CHECK(d.minima[0].x + d.minima[1].x == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(d.minima[0].kl == doctest::Approx(d.minima[1].kl).epsilon(1e-10));
    CHECK(d.minima[0].x < 0.5);
    REQUIRE(d.maxima.size() == 1);
    CHECK(d.maxima[0].x == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("symmetry") {
    for (double eta : {0.05, 0.4})
        for (double g : {0.0, 0.0025, 0.02})
            for (double x : {0.1, 0.3, 0.45}) {
                CHECK(std::abs(iproj_kl(eta, g, x) - iproj_kl(eta, g, 1 - x)) <= 1e-12);
            }
}

TEST_CASE("gamma > 0 lowers the curve") {
    for (double x : {0.2, 0.4, 0.5}) {
        double a = iproj_kl(0.4, 0, x), b = iproj_kl(0.4, 0.01, x);
        CHECK(b <= a + 1e-15);
    }
    auto c = kl_curve(0.4, 0.0025, 2000);
    CHECK(c.method == "empirical");
    REQUIRE(c.minima.size() == 2);
    // the minima move toward the centre
    auto c0 = kl_curve(0.4, 0, 2000);
    CHECK(c.minima[0].x > c0.minima[0].x);
    // enough slack and the two minima merge
    auto big = kl_curve(0.4, 0.05, 2000);
    CHECK(big.minima.size() == 1);
}

TEST_CASE("yz equation") {
    for (double z : {0.01, 0.1, 0.3, 0.5, 0.9, 0.99}) {
        auto [one, y] = yz_solutions(z);
        CHECK(one == 1.0);
        CHECK(std::abs(yz_residual(one, z)) <= 1e-12);
        CHECK(std::abs(yz_residual(y, z)) <= 1e-10);
        CHECK(std::abs(y - 1) > 1e-6);
    }
    CHECK_THROWS_AS(yz_solutions(1.5), DomainError);
}

TEST_CASE("thresholds") {
    double e = std::exp(-1.0);
    auto c = conjecture_threshold();
    CHECK(c.t == doctest::Approx((1 - e) / (4 * (1 + e))).epsilon(1e-15));
    CHECK(c.eta == doctest::Approx(uniform_tau(c.t)).epsilon(1e-14));
    auto k = curvature_threshold();
    double e2 = std::exp(-2.0);
    CHECK(k.t == doctest::Approx((1 - e2) / (4 * (1 + e2))).epsilon(1e-15));
    // second derivative of the gamma = 0 curve at 1/2 by finite differences
    auto d2 = [](double eta) {
        double h = 1e-4;
        return (kl0(eta, 0.5 + h) - 2 * kl0(eta, 0.5) + kl0(eta, 0.5 - h)) / (h * h);
    };
    for (double eta : {0.1, 0.25, 0.45}) {
        double t = reference_t(eta);
        CHECK(d2(eta) == doctest::Approx(8 - 4 * std::log((1 + 4 * t) / (1 - 4 * t))).epsilon(1e-5));
    }
    CHECK(std::abs(d2(k.eta)) < 1e-5);
}

TEST_CASE("transition from one to two minima") {
    double eta0 = curvature_threshold().eta;
    CHECK(kl_curve(eta0 - 1e-3, 0, 4000).minima.size() == 1);
    CHECK(kl_curve(eta0 + 1e-3, 0, 4000).minima.size() == 2);
    // below the curvature threshold there is a single minimum, so the other
    // candidate value leaves the curve unimodal
    CHECK(kl_curve(conjecture_threshold().eta + 1e-3, 0, 4000).minima.size() == 1);
}

}  // TEST_SUITE
