#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "betanet/mcint.hpp"

namespace betanet {

std::vector<int> generate_n_list();
// ticks on [0,1): stepsize on [0, 1/2), stepsize/ratio on [1/2, 3/4), ... for
// num_levels halvings; the last interval up to 1 keeps the finest step
std::vector<double> generate_normalized_kl_list(double stepsize, double level_ratio, int num_levels);

// gamma with ell_gamma = t+ - t- = 1/N on the uniform-marginals path
double gamma_zero(int N);
// KL(p^gamma || p^eta), both on the uniform-marginals path
double kl_between_references(double gamma, double eta);

struct BetaCell {
    int N = 0;
    double kl = 0;
    double log_beta = 0;
    bool converged = true;  // false: Monte Carlo hit max_iterations
};

struct BetaTable {
    double eta = 0;
    std::vector<int> n_grid;
    std::vector<BetaCell> lower;  // gamma <= eta, keyed by KL(p^gamma || p^eta)
    std::vector<BetaCell> upper;  // gamma > eta
    std::map<int, double> gamma0;

    // cells ordered by (N, kl); interpolation relies on it
    void sort_cells();
    bool empty() const { return lower.empty() && upper.empty(); }

    void write(std::ostream& os) const;
    static BetaTable read(std::istream& is, const std::string& name = "<stream>");
    void save(const std::string& path) const;
    static BetaTable load(const std::string& path);
};

struct TableGrids {
    std::vector<int> n_list = generate_n_list();
    std::vector<double> lower_ticks = generate_normalized_kl_list(0.1, 2, 4);
    int upper_points = 10;
};

struct BuildOptions {
    McParams mc;
    int exact_cutoff = 200;
    std::uint64_t seed = 1;
    bool parallel = true;
};

struct BuildReport {
    int exact_cells = 0, mc_cells = 0, unconverged = 0, dropped = 0;
};

// (N, gamma, kl) of every cell the build would compute, split by side
struct PlannedCell {
    int N;
    double gamma, kl;
    bool upper;
};
std::vector<PlannedCell> plan_cells(double eta, const TableGrids& grids);

BetaTable build_table(double eta, const TableGrids& grids, const BuildOptions& opts,
                      BuildReport* report = nullptr);

double interpolate_log_beta(const BetaTable& table, int N, double gamma);

}  // namespace betanet
