#include "betanet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "betanet/errors.hpp"
#include "betanet/numeric.hpp"

namespace betanet {

namespace {

void check_distribution(std::span<const double> p, double tol) {
    double s = 0;
    for (double v : p) {
        if (!(v >= -kZeroCell)) throw DomainError("negative probability");
        s += v;
    }
    if (std::fabs(s - 1.0) > tol) throw DomainError("probabilities do not sum to 1");
}

}  // namespace

Table::Table(int k, int l, std::vector<double> cells) : k_(k), l_(l), cells_(std::move(cells)) {
    if (k < 1 || l < 1 || cells_.size() != static_cast<size_t>(k * l))
        throw DomainError("table shape mismatch");
    check_distribution(cells_, 1e-12);
    for (double& v : cells_)
        if (v < 0) v = 0;
}

std::vector<double> Table::row_marginal() const {
    std::vector<double> m(k_, 0.0);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < l_; ++j) m[i] += (*this)(i, j);
    return m;
}

std::vector<double> Table::col_marginal() const {
    std::vector<double> m(l_, 0.0);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < l_; ++j) m[j] += (*this)(i, j);
    return m;
}

Table Table::outer(std::span<const double> a, std::span<const double> b) {
    std::vector<double> c;
    c.reserve(a.size() * b.size());
    for (double x : a)
        for (double y : b) c.push_back(x * y);
    return Table(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(c));
}

Table Table::two_by_two(double p00, double p01, double p10, double p11) {
    return Table(2, 2, {p00, p01, p10, p11});
}

double entropy(std::span<const double> p) {
    check_distribution(p, 1e-9);
    double h = 0;
    for (double v : p) h -= xlogx(v);
    return std::max(h, 0.0);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DomainError("kl_divergence: shape mismatch");
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= kZeroCell) continue;
        if (q[i] <= kZeroCell) throw DomainError("kl_divergence: p not absolutely continuous w.r.t. q");
        s += p[i] * std::log(p[i] / q[i]);
    }
    return std::max(s, 0.0);
}

double kl_divergence(const Table& p, const Table& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) throw DomainError("kl_divergence: shape mismatch");
    return kl_divergence(std::span<const double>(p.cells()), std::span<const double>(q.cells()));
}

Table m_projection(const Table& p) {
    auto a = p.row_marginal();
    auto b = p.col_marginal();
    return Table::outer(a, b);
}

double mutual_information(const Table& p) {
    auto a = p.row_marginal();
    auto b = p.col_marginal();
    double s = 0;
    for (double v : p.cells()) s += xlogx(v);
    for (double v : a) s -= xlogx(v);
    for (double v : b) s -= xlogx(v);
    return std::max(s, 0.0);
}

double mutual_information_kl(const Table& p) { return kl_divergence(p, m_projection(p)); }

double tau4(const double* q) {
    double r0 = q[0] + q[1], r1 = q[2] + q[3];
    double c0 = q[0] + q[2], c1 = q[1] + q[3];
    double s = xlogx(q[0]) + xlogx(q[1]) + xlogx(q[2]) + xlogx(q[3]) - xlogx(r0) - xlogx(r1) - xlogx(c0) -
               xlogx(c1);
    return s > 0 ? s : 0.0;
}

double kl4(const double* q, const double* p) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        if (q[i] > 0) s += q[i] * std::log(q[i] / p[i]);
    return s > 0 ? s : 0.0;
}

TPath::TPath(Table product_base) : base(std::move(product_base)) {
    if (base.rows() != 2 || base.cols() != 2) throw DomainError("TPath: 2x2 tables only");
    Table proj = m_projection(base);
    for (int i = 0; i < 4; ++i)
        if (std::fabs(proj.cells()[i] - base.cells()[i]) > 1e-10)
            throw DomainError("TPath: base is not a product distribution");
    t_min = -std::min(base(0, 0), base(1, 1));
    t_max = std::min(base(0, 1), base(1, 0));
}

TPath TPath::from_marginals(double a, double b) {
    if (!(a > 0 && a < 1 && b > 0 && b < 1)) throw DomainError("TPath: marginals must lie in (0,1)");
    double ra[2] = {a, 1 - a}, cb[2] = {b, 1 - b};
    return TPath(Table::outer(ra, cb));
}

namespace {

void path_cells(const TPath& path, double t, double* q) {
    const auto& b = path.base.cells();
    q[0] = b[0] + t;
    q[1] = b[1] - t;
    q[2] = b[2] - t;
    q[3] = b[3] + t;
    for (int i = 0; i < 4; ++i)
        if (q[i] < 0) q[i] = 0;
}

double root_on_side(const TPath& path, double gamma, double end) {
    if (gamma < 0) throw DomainError("gamma must be nonnegative");
    if (gamma == 0) return 0.0;
    double top = path_tau(path, end);
    if (gamma > top + 1e-12) throw DomainError("gamma exceeds the largest tau on this path");
    if (gamma >= top) return end;
    return bisect([&](double t) { return path_tau(path, t) - gamma; }, std::min(0.0, end), std::max(0.0, end));
}

}  // namespace

Table path_at(const TPath& path, double t) {
    if (!(t > path.t_min && t <= path.t_max)) throw DomainError("path_at: t outside (t_min, t_max]");
    double q[4];
    path_cells(path, t, q);
    return Table(2, 2, {q[0], q[1], q[2], q[3]});
}

double path_tau(const TPath& path, double t) {
    double q[4];
    path_cells(path, t, q);
    return tau4(q);
}

double t_gamma_plus(const TPath& path, double gamma) { return root_on_side(path, gamma, path.t_max); }

double t_gamma_minus(const TPath& path, double gamma) { return root_on_side(path, gamma, path.t_min); }

double uniform_tau(double t) {
    double a = 0.25 + t, b = 0.25 - t;
    double s = std::log(4.0) + 2 * (xlogx(a) + xlogx(b));
    return s > 0 ? s : 0.0;
}

double reference_t(double eta) {
    if (!(eta >= 0 && eta < std::log(2.0))) throw DomainError("eta must lie in [0, ln 2)");
    if (eta == 0) return 0.0;
    return bisect([&](double t) { return uniform_tau(t) - eta; }, 0.0, 0.25);
}

Table reference_distribution(double eta) {
    double t = reference_t(eta);
    return Table::two_by_two(0.25 + t, 0.25 - t, 0.25 - t, 0.25 + t);
}

}  // namespace betanet
