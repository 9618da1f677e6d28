#include "betanet/iproj.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "betanet/bounds.hpp"
#include "betanet/errors.hpp"
#include "betanet/simplex.hpp"

namespace betanet {

namespace {

// KL(p(t) || ref) along the path through outer((x,1-x),(x,1-x))
struct Fiber {
    double b[4];
    Fiber(double x) {
        double y = 1 - x;
        b[0] = x * x;
        b[1] = x * y;
        b[2] = y * x;
        b[3] = y * y;
    }
    void at(double t, double* q) const {
        q[0] = b[0] + t;
        q[1] = b[1] - t;
        q[2] = b[2] - t;
        q[3] = b[3] + t;
    }
};

}  // namespace

double iproj_kl(double eta, double gamma, double x) {
    if (!(x > 0 && x < 1)) throw DomainError("x must lie in (0, 1)");
    if (gamma < 0) throw DomainError("gamma must be >= 0");
    const Table ref = reference_distribution(eta);
    const double* p = ref.cells().data();
    Fiber f(x);
    double q[4];
    if (gamma == 0) {
        f.at(0, q);
        return kl4(q, p);
    }
    // p^eta sits at t > 0, so the nearer boundary component is t_gamma^+;
    // very close to x = 0 or 1 the whole fiber has tau <= gamma and we stop at its end
    TPath path(Table::two_by_two(f.b[0], f.b[1], f.b[2], f.b[3]));
    double t = path.t_max;
    try {
        t = t_gamma_plus(path, gamma);
    } catch (const DomainError&) {
    }
    f.at(t, q);
    return kl4(q, p);
}

KlCurve kl_curve(double eta, double gamma, int resolution) {
    if (resolution < 100) throw DomainError("resolution must be >= 100");
    KlCurve c;
    c.eta = eta;
    c.gamma = gamma;
    c.method = gamma == 0 ? "exact" : "empirical";
    c.samples.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        double x = double(i + 1) / (resolution + 1);
        c.samples.push_back({x, iproj_kl(eta, gamma, x)});
    }
    const auto& s = c.samples;
    for (int i = 1; i + 1 < resolution; ++i) {
        if (s[i].kl < s[i - 1].kl && s[i].kl <= s[i + 1].kl) {
            auto r = boost::math::tools::brent_find_minima(
                [&](double x) { return iproj_kl(eta, gamma, x); }, s[i - 1].x, s[i + 1].x, 52);
            c.minima.push_back({r.first, r.second});
        } else if (s[i].kl > s[i - 1].kl && s[i].kl >= s[i + 1].kl) {
            c.maxima.push_back(s[i]);
        }
    }
    return c;
}

double yz_residual(double y, double z) { return std::log(y) + y * std::log(z) - std::log(z); }

std::pair<double, double> yz_solutions(double z) {
    if (!(z > 0 && z < 1)) throw DomainError("z must lie in (0, 1)");
    double lz = std::log(z);
    double arg = std::max(z * lz, -std::exp(-1.0));
    // log z itself sits on W_{-1} for z < 1/e and on W_0 above; the other root
    // comes from the other branch
    double w = z < std::exp(-1.0) ? lambert_w0(arg) : lambert_wm1(arg);
    return {1.0, w / lz};
}

Threshold conjecture_threshold() {
    double ie = std::exp(-1.0);
    double t = (1 - ie) / (4 * (1 + ie));
    return {t, uniform_tau(t)};
}

Threshold curvature_threshold() {
    double ie2 = std::exp(-2.0);
    double t = (1 - ie2) / (4 * (1 + ie2));
    return {t, uniform_tau(t)};
}

}  // namespace betanet
