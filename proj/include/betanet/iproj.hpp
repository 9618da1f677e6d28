#pragma once

#include <string>
#include <utility>
#include <vector>

namespace betanet {

struct CurvePoint {
    double x;
    double kl;
};

struct KlCurve {
    double eta = 0;
    double gamma = 0;
    std::vector<CurvePoint> samples;  // increasing x
    std::vector<CurvePoint> minima;   // refined local minima
    std::vector<CurvePoint> maxima;   // interior local maxima (grid resolution)
    std::string method;               // "exact" for gamma = 0, "empirical" otherwise
};

// KL(q || p^eta) where q is the equal-marginal product (x, 1-x) x (x, 1-x); for
// gamma > 0, q is first pushed along that product's fixed-marginal path out to
// tau = gamma on the side facing p^eta.
double iproj_kl(double eta, double gamma, double x);

// grid x_i = (i+1)/(resolution+1), i < resolution
KlCurve kl_curve(double eta, double gamma, int resolution = 10000);

// roots in y of log y + y log z - log z = 0 for 0 < z < 1: {1, other branch}
std::pair<double, double> yz_solutions(double z);
double yz_residual(double y, double z);

struct Threshold {
    double t;    // (1 - 1/e) / (4 (1 + 1/e))
    double eta;  // tau of the uniform-marginal path at t
};
Threshold conjecture_threshold();
// where the gamma = 0 curve actually changes from one critical point to three:
// its second derivative at x = 1/2 is 8 - 4 log((1+4t)/(1-4t)), zero at
// t = (1 - e^-2) / (4 (1 + e^-2))
Threshold curvature_threshold();

}  // namespace betanet
