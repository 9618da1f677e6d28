#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace betanet {

// Bisection for a sign change of f on [lo, hi]. Stops once the bracket is
// narrower than width or after max_iter halvings; returns the midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double width = 1e-13, int max_iter = 200) {
    double flo = f(lo);
    for (int i = 0; i < max_iter && hi - lo > width; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// SplitMix64 finalizer; derives independent per-task seeds from one seed
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

// printf("%.17g") -- enough digits for an exact double round-trip
std::string fmt17(double v);

}  // namespace betanet
