#pragma once

#include <span>
#include <vector>

namespace betanet {

// cells at or below this are zero for support checks
inline constexpr double kZeroCell = 1e-15;

// k x l contingency table of probabilities, row-major.
class Table {
public:
    Table() = default;
    Table(int k, int l, std::vector<double> cells);  // validates, throws DomainError

    int rows() const { return k_; }
    int cols() const { return l_; }
    double operator()(int i, int j) const { return cells_[i * l_ + j]; }
    const std::vector<double>& cells() const { return cells_; }

    std::vector<double> row_marginal() const;  // p_A
    std::vector<double> col_marginal() const;  // p_B

    static Table outer(std::span<const double> a, std::span<const double> b);
    static Table two_by_two(double p00, double p01, double p10, double p11);

private:
    int k_ = 0, l_ = 0;
    std::vector<double> cells_;
};

double entropy(std::span<const double> p);
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const Table& p, const Table& q);
Table m_projection(const Table& p);
// H(p_A) + H(p_B) - H(p)
double mutual_information(const Table& p);
// H(p || m_projection(p)), the same quantity computed the other way
double mutual_information_kl(const Table& p);

// Raw 2x2 kernels without validation. q = {q00, q01, q10, q11}.
double tau4(const double* q);
double kl4(const double* q, const double* p);

// p(t) = base + t * [[1,-1],[-1,1]], base a 2x2 product table.
struct TPath {
    Table base;
    double t_min = 0, t_max = 0;

    explicit TPath(Table product_base);
    // row marginal (a, 1-a), column marginal (b, 1-b)
    static TPath from_marginals(double a, double b);
    static TPath uniform() { return from_marginals(0.5, 0.5); }
};

Table path_at(const TPath& path, double t);
double path_tau(const TPath& path, double t);  // tau(path_at(path, t)) without building a Table

double t_gamma_plus(const TPath& path, double gamma);
double t_gamma_minus(const TPath& path, double gamma);

// Uniform-marginals path p0(t) = [[1/4+t, 1/4-t],[1/4-t, 1/4+t]].
double uniform_tau(double t);
// t > 0 with uniform_tau(t) = eta
double reference_t(double eta);
Table reference_distribution(double eta);

}  // namespace betanet
