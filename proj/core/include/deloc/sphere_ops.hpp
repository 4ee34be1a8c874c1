#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "deloc/graph.hpp"
#include "deloc/tree_harmonics.hpp"

namespace deloc {

Eigen::MatrixXd adjacency_matrix(const RegularGraph& g);

// Normalized adjacency T = A / sqrt(d); symmetric, spectrum contained in
// [-(d+1)/sqrt(d), (d+1)/sqrt(d)].
Eigen::MatrixXd t_operator(const RegularGraph& g);

// Non-backtracking walk matrices on an arbitrary 0/1 adjacency matrix:
// B_0 = I, B_1 = A, B_2 = A^2 - (d+1) I, B_{m+1} = A B_m - d B_{m-1}.
// Entry (x, y) of B_m counts non-backtracking walks of length m between x
// and y whenever every vertex on the walk has degree d+1.
std::vector<Eigen::MatrixXd> nonbacktracking_walk_matrices(
    const Eigen::MatrixXd& adjacency, int d, int max_n);

/// Sphere operators S_0..S_max_n on a graph: S_m = d^{-m/2} B_m, the
/// normalized distance-m averaging operator of the covering tree pushed down
/// to the graph. Below the injectivity radius S_m averages over genuine
/// distance-m spheres; beyond it the walk recurrence is the definition.
class SphereOperatorFamily {
 public:
  SphereOperatorFamily(const RegularGraph& g, int max_n);

  const RegularGraph& graph() const noexcept { return graph_; }
  int max_n() const noexcept { return static_cast<int>(s_.size()) - 1; }
  const Eigen::MatrixXd& s(int n) const { return s_.at(n); }

 private:
  RegularGraph graph_;  // by value: the family outlives any caller temporary
  std::vector<Eigen::MatrixXd> s_;
};

// y = T x without materializing the matrix.
void apply_t(const RegularGraph& g, const Eigen::VectorXd& in,
             Eigen::VectorXd& out);

// P_n(T/2) v by the matrix-free three-term recurrence
// w_{m+1} = T w_m - w_{m-1}, w_0 = v, w_1 = (T/2) v.
Eigen::VectorXd apply_chebyshev_of_t(const RegularGraph& g, int n,
                                     const Eigen::VectorXd& v);

// sum over (frequency, coefficient) terms of coeff * P_freq(T/2) v, computed
// in one recurrence sweep up to the largest frequency.
Eigen::VectorXd apply_cosine_polynomial(
    const RegularGraph& g,
    std::span<const std::pair<long long, double>> terms,
    const Eigen::VectorXd& v);

// Max absolute entry difference between P_n(T/2), assembled by the dense
// matrix recurrence, and its expansion in sphere operators
//   sum_{j=0}^{n/2-1} ((1-d)/(2 d^{n/2})) d^j S_{2j} + (1/2) S_n.
// The expansion is a polynomial identity in the adjacency algebra and must
// hold on every regular graph, short cycles or not.
double sphere_decomposition_discrepancy(const SphereOperatorFamily& family,
                                        int n);
double sphere_decomposition_discrepancy(const RegularGraph& g, int n);

// Operator norm of S_n from L^p to its conjugate L^q. Exact for p = 1 (max
// absolute entry) and p = 2 (largest singular value; diagnostic only). For
// 1 < p < 2 returns the Riesz-Thorin interpolation upper bound
// ||S||_{1->inf}^{2/p-1} ||S||_{2->2}^{2-2/p}, an upper bound rather than the
// norm itself.
double sphere_norm(const SphereOperatorFamily& family, int n, double p);

bool sphere_norm_is_exact(double p) noexcept;  // false on the interpolated range

/// Measured decay certificate ||S_n|| <= C d^{-alpha n} for n <= N.
struct ConditionFit {
  double p = 1.0;
  std::vector<double> per_n_norms;
  double C = 1.0;
  double alpha = 0.5;
  int N = 0;
  bool c_alpha_given = true;  // false when fitted from the measured norms
  bool no_decay = false;      // norms failed to decay at the first step
};

// With C and alpha given: largest N such that every norm up to N satisfies
// the bound. Without them: least-squares fit of alpha over the decaying
// prefix of the norm sequence, C as the max residual multiplier.
ConditionFit fit_condition(const SphereOperatorFamily& family, double p,
                           std::optional<double> C = std::nullopt,
                           std::optional<double> alpha = std::nullopt);

ConditionFit fit_condition_from_norms(std::vector<double> norms, int d,
                                      double p,
                                      std::optional<double> C = std::nullopt,
                                      std::optional<double> alpha = std::nullopt);

// Explicit constant c(d, alpha) with ||P_n(T/2)||_{1->inf} <= c C d^{-alpha n}
// for even n <= N on a certified graph: c = d sum_{j>=0} d^{-2 alpha j}.
double chebyshev_norm_constant(int d, double alpha);

}  // namespace deloc
