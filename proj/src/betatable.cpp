#include "betanet/betatable.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"
#include "betanet/simplex.hpp"
#include "betanet/stepcdf.hpp"

namespace betanet {

std::vector<int> generate_n_list() {
    std::vector<int> out;
    for (int N = 5; N <= 100; N += 5) out.push_back(N);
    for (int N = 110; N <= 200; N += 10) out.push_back(N);
    for (int N = 250; N <= 500; N += 50) out.push_back(N);
    for (int N = 600; N <= 1000; N += 100) out.push_back(N);
    for (int N = 2000; N <= 10000; N += 1000) out.push_back(N);
    return out;
}

std::vector<double> generate_normalized_kl_list(double stepsize, double level_ratio, int num_levels) {
    if (!(stepsize > 0) || !(level_ratio > 1) || num_levels < 0)
        throw DomainError("generate_normalized_kl_list: need stepsize > 0, ratio > 1, levels >= 0");
    std::vector<double> out;
    auto fill = [&](double from, double to, double step) {
        for (long j = 0;; ++j) {
            double x = from + j * step;
            if (x >= to - 1e-12) break;
            out.push_back(x);
        }
    };
    double step = stepsize;
    double from = 0;
    for (int i = 0; i < num_levels; ++i) {
        double to = 1 - std::ldexp(1.0, -(i + 1));
        step = stepsize / std::pow(level_ratio, i);
        fill(from, to, step);
        from = to;
    }
    fill(from, 1.0, step);
    return out;
}

double gamma_zero(int N) {
    if (N < 2) throw DomainError("gamma_zero: N must be >= 2 (the uniform path has length 1/2)");
    // ell_gamma = 2 t_gamma^+ on the uniform path, so the root is explicit
    return uniform_tau(0.5 / N);
}

namespace {

double uniform_kl(double t, double eta_t) {
    double q[4] = {0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t};
    double p[4] = {0.25 + eta_t, 0.25 - eta_t, 0.25 - eta_t, 0.25 + eta_t};
    return kl4(q, p);
}

}  // namespace

double kl_between_references(double gamma, double eta) {
    const double ln2 = std::log(2.0);
    double t = gamma >= ln2 ? 0.25 : reference_t(std::max(gamma, 0.0));
    return uniform_kl(t, reference_t(eta));
}

void BetaTable::sort_cells() {
    auto by = [](const BetaCell& a, const BetaCell& b) { return a.N != b.N ? a.N < b.N : a.kl < b.kl; };
    std::sort(lower.begin(), lower.end(), by);
    std::sort(upper.begin(), upper.end(), by);
    n_grid.clear();
    for (const auto& kv : gamma0) n_grid.push_back(kv.first);
}

void BetaTable::write(std::ostream& os) const {
    os << "betatable 1\n";
    os << "eta " << fmt17(eta) << "\n";
    os << "gamma0 " << gamma0.size() << "\n";
    for (const auto& [N, g] : gamma0) os << N << "\t" << fmt17(g) << "\n";
    auto side = [&](const char* name, const std::vector<BetaCell>& cells) {
        os << name << " " << cells.size() << "\n";
        for (const auto& c : cells) {
            os << c.N << "\t" << fmt17(c.kl) << "\t" << fmt17(c.log_beta);
            if (!c.converged) os << "\tnc";
            os << "\n";
        }
    };
    side("lower", lower);
    side("upper", upper);
}

BetaTable BetaTable::read(std::istream& is, const std::string& name) {
    BetaTable t;
    std::string line;
    int lineno = 0;
    auto next = [&](const char* what) -> std::istringstream {
        if (!std::getline(is, line)) throw LoadError(name, lineno + 1, std::string("unexpected end of file, expected ") + what);
        ++lineno;
        return std::istringstream(line);
    };
    auto fail = [&](const std::string& msg) { throw LoadError(name, lineno, msg); };

    {
        auto ss = next("header");
        std::string tag;
        int version = 0;
        if (!(ss >> tag >> version) || tag != "betatable") fail("not a betatable file");
        if (version != 1) fail("unsupported betatable version " + std::to_string(version));
    }
    {
        auto ss = next("eta");
        std::string tag;
        if (!(ss >> tag >> t.eta) || tag != "eta") fail("expected 'eta <value>'");
    }
    auto count_line = [&](const char* tag_expected) {
        auto ss = next(tag_expected);
        std::string tag;
        long n = -1;
        if (!(ss >> tag >> n) || tag != tag_expected || n < 0) fail(std::string("expected '") + tag_expected + " <count>'");
        return n;
    };
    long ng = count_line("gamma0");
    for (long i = 0; i < ng; ++i) {
        auto ss = next("gamma0 row");
        int N;
        double g;
        if (!(ss >> N >> g)) fail("expected 'N gamma0'");
        t.gamma0[N] = g;
    }
    for (auto* side : {&t.lower, &t.upper}) {
        long n = count_line(side == &t.lower ? "lower" : "upper");
        for (long i = 0; i < n; ++i) {
            auto ss = next("cell row");
            BetaCell c;
            if (!(ss >> c.N >> c.kl >> c.log_beta)) fail("expected 'N kl logbeta'");
            std::string flag;
            if (ss >> flag) {
                if (flag != "nc") fail("unknown cell flag '" + flag + "'");
                c.converged = false;
            }
            side->push_back(c);
        }
    }
    t.sort_cells();
    return t;
}

void BetaTable::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw LoadError(path, 0, "cannot open for writing");
    write(os);
}

BetaTable BetaTable::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw LoadError(path, 0, "cannot open table file");
    return read(is, path);
}

std::vector<PlannedCell> plan_cells(double eta, const TableGrids& grids) {
    if (!(eta > 0 && eta < std::log(2.0))) throw DomainError("eta must lie in (0, ln 2)");
    const double t_eta = reference_t(eta);
    const double kl0 = uniform_kl(0.0, t_eta);
    const double kl_top = uniform_kl(0.25, t_eta);

    // gamma for each tick does not depend on N
    std::vector<std::pair<double, double>> lower_pts;  // (gamma, kl)
    for (double z : grids.lower_ticks) {
        double target = z * kl0;
        double t = z <= 0 ? t_eta
                 : z >= 1 ? 0.0
                          : bisect([&](double x) { return uniform_kl(x, t_eta) - target; }, 0.0, t_eta);
        lower_pts.emplace_back(uniform_tau(t), target);
    }
    std::vector<std::pair<double, double>> upper_pts;
    for (int j = 1; j <= grids.upper_points; ++j) {
        double target = kl_top * j / grids.upper_points;
        double t = j == grids.upper_points
                       ? 0.25
                       : bisect([&](double x) { return uniform_kl(x, t_eta) - target; }, t_eta, 0.25);
        upper_pts.emplace_back(j == grids.upper_points ? std::log(2.0) : uniform_tau(t), target);
    }

    std::vector<PlannedCell> cells;
    for (int N : grids.n_list) {
        double g0 = gamma_zero(N);
        for (auto [g, kl] : lower_pts)
            if (g >= g0) cells.push_back({N, g, kl, false});
        for (auto [g, kl] : upper_pts)
            if (g >= g0) cells.push_back({N, g, kl, true});
    }
    return cells;
}

BetaTable build_table(double eta, const TableGrids& grids, const BuildOptions& opts, BuildReport* report) {
    const auto plan = plan_cells(eta, grids);
    BetaTable table;
    table.eta = eta;
    for (int N : grids.n_list) table.gamma0[N] = gamma_zero(N);

    std::vector<double> beta(plan.size(), 0.0);
    std::vector<char> converged(plan.size(), 1), exact(plan.size(), 0);

    // exact rows: one CDF per N
    std::vector<int> exact_ns;
    for (int N : grids.n_list)
        if (N <= opts.exact_cutoff) exact_ns.push_back(N);
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
    for (size_t r = 0; r < exact_ns.size(); ++r) {
        const int N = exact_ns[r];
        StepCdf cdf = exact_beta_cdf(N, eta);
        for (size_t i = 0; i < plan.size(); ++i)
            if (plan[i].N == N) {
                beta[i] = cdf.cumulative_at(plan[i].gamma);
                exact[i] = 1;
            }
    }

    std::vector<size_t> mc_idx;
    for (size_t i = 0; i < plan.size(); ++i)
        if (plan[i].N > opts.exact_cutoff) mc_idx.push_back(i);
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
    for (size_t k = 0; k < mc_idx.size(); ++k) {
        const auto& c = plan[mc_idx[k]];
        std::uint64_t s = mix_seed(opts.seed, static_cast<std::uint64_t>(c.N) * 1000 + mc_idx[k]);
        McResult r = monte_carlo_integrate(IntegrandContext{eta, c.N, c.gamma}, opts.mc, s);
        beta[mc_idx[k]] = r.final_estimate;
        converged[mc_idx[k]] = r.stopped_by_criterion;
    }

    BuildReport rep;
    for (size_t i = 0; i < plan.size(); ++i) {
        (exact[i] ? rep.exact_cells : rep.mc_cells)++;
        if (!converged[i]) rep.unconverged++;
        if (!(beta[i] > 0)) {
            rep.dropped++;
            continue;
        }
        BetaCell cell{plan[i].N, plan[i].kl, std::min(0.0, std::log(beta[i])), converged[i] != 0};
        (plan[i].upper ? table.upper : table.lower).push_back(cell);
    }
    table.sort_cells();
    if (report) *report = rep;
    return table;
}

namespace {

std::span<const BetaCell> row(const std::vector<BetaCell>& cells, int N) {
    auto lo = std::lower_bound(cells.begin(), cells.end(), N, [](const BetaCell& c, int n) { return c.N < n; });
    auto hi = std::upper_bound(cells.begin(), cells.end(), N, [](int n, const BetaCell& c) { return n < c.N; });
    return {lo, hi};
}

// linear in kl along one row; the other side's kl = 0 cell joins the two sides
std::optional<double> row_value(const BetaTable& t, bool upper, int N, double kl) {
    auto own = row(upper ? t.upper : t.lower, N);
    auto other = row(upper ? t.lower : t.upper, N);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(own.size() + 1);
    bool has_zero = !own.empty() && own.front().kl == 0;
    if (!has_zero && !other.empty() && other.front().kl == 0) pts.emplace_back(0.0, other.front().log_beta);
    for (const auto& c : own) pts.emplace_back(c.kl, c.log_beta);
    if (pts.empty()) return std::nullopt;
    if (pts.size() == 1) return pts[0].second;
    size_t j = 1;
    while (j + 1 < pts.size() && pts[j].first < kl) ++j;
    // pts[j-1], pts[j] bracket kl, or are the end pair used for extrapolation
    auto [x0, y0] = pts[j - 1];
    auto [x1, y1] = pts[j];
    if (x1 == x0) return y1;
    return y0 + (kl - x0) * (y1 - y0) / (x1 - x0);
}

}  // namespace

double interpolate_log_beta(const BetaTable& table, int N, double gamma) {
    if (table.empty() || table.n_grid.empty()) throw DomainError("interpolate_log_beta: empty table");
    if (!(gamma >= 0)) throw DomainError("interpolate_log_beta: gamma must be nonnegative");
    const auto& grid = table.n_grid;
    if (N < grid.front()) return 0.0;

    double g = N >= 2 ? std::max(gamma, gamma_zero(N)) : gamma;
    g = std::min(g, std::log(2.0));
    const bool upper = g > table.eta;
    double kl = kl_between_references(g, table.eta);
    // clamp to the tabulated KL range of that side
    double kl_max = 0;
    for (const auto& c : upper ? table.upper : table.lower) kl_max = std::max(kl_max, c.kl);
    kl = std::min(kl, kl_max);

    auto value_at = [&](size_t i) { return row_value(table, upper, grid[i], kl); };

    // nearest rows with data at or below / at or above N
    auto pos = std::lower_bound(grid.begin(), grid.end(), N) - grid.begin();
    std::optional<std::pair<int, double>> below, above;
    for (long i = std::min<long>(pos, grid.size() - 1); i >= 0 && !below; --i)
        if (grid[i] <= N)
            if (auto v = value_at(i)) below = {{grid[i], *v}};
    for (size_t i = pos; i < grid.size() && !above; ++i)
        if (auto v = value_at(i)) above = {{grid[i], *v}};

    double v;
    if (below && above) {
        if (above->first == below->first)
            v = below->second;
        else
            v = below->second + (N - below->first) * (above->second - below->second) / (above->first - below->first);
    } else if (below) {
        // beyond the last populated row: extend the line through the two largest rows
        std::optional<std::pair<int, double>> prev;
        for (long i = std::find(grid.begin(), grid.end(), below->first) - grid.begin() - 1; i >= 0 && !prev; --i)
            if (auto w = value_at(i)) prev = {{grid[i], *w}};
        if (prev)
            v = below->second + (N - below->first) * (below->second - prev->second) / (below->first - prev->first);
        else
            v = below->second;
    } else if (above) {
        v = above->second;
    } else {
        return 0.0;
    }
    return std::min(v, 0.0);
}

}  // namespace betanet
