#include <cstdio>

#include "betanet/numeric.hpp"

namespace betanet {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace betanet
