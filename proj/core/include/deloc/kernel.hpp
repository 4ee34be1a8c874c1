#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "deloc/graph.hpp"
#include "deloc/sphere_ops.hpp"
#include "deloc/tree_harmonics.hpp"

namespace deloc {

// Distance from x to the nearest integer multiple of 2*pi (symmetric
// representative in (-pi, pi]).
double angular_distance(double x);

// Smallest positive r <= R with |r*theta0 mod 2pi| < 2pi/R; existence is the
// pigeonhole guarantee. Exhaustive scan, the reference implementation.
long long dirichlet_approx(double theta0, long long R);

// Same contract via continued-fraction convergents of theta0/(2pi); the
// smallest admissible r is always a convergent denominator, so this is a
// fast path rather than an approximation. Cross-checked against the scan in
// tests; falls back to it if no convergent passes.
long long dirichlet_approx_convergents(double theta0, long long R);

// Even multiple r' = 2 l r with R*eps/16 <= r' <= 2R: l = 1 whenever
// r >= R*eps/32, otherwise the smallest multiple of r inside
// [R*eps/32, R*eps/16] is doubled.
std::pair<long long, long long> select_even_multiple(long long r, long long R,
                                                     double epsilon);

/// Parameters of the spectral amplification kernel targeting angle theta0:
/// a Fejer-type cosine polynomial in frequencies r', 2r', ..., (2M-1) r'
/// whose transform exceeds 1/epsilon at theta0 and never drops below -1.
struct KernelRecipe {
  double theta0 = 0.0;
  double epsilon = 0.25;
  long long N = 0;  // admissible radius the construction was sized for
  long long M = 0;  // floor(1/epsilon)
  long long R = 0;  // ceil(N*epsilon/8)
  long long r = 0;  // Dirichlet denominator
  long long l = 0;
  long long r_prime = 0;  // 2*l*r, even
  std::vector<std::pair<long long, double>> cosine_terms;  // (j*r', (2M-j)/M)
  long long support_radius = 0;  // (2M-1)*r'
  std::vector<std::string> flags;

  bool has_flag(const std::string& name) const;
};

inline constexpr const char* kFlagSupportExceedsN = "support_exceeds_n";
inline constexpr const char* kFlagAngleBoundViolated = "angle_bound_violated";
inline constexpr const char* kFlagOverflowRisk = "overflow_risk";

KernelRecipe make_kernel_recipe(double theta0, double epsilon, long long N);

// Transform of the kernel at a tempered angle: h(theta) =
// sum_{j=1}^{2M-1} ((2M-j)/M) cos(j r' theta). Bounded below by -1, above by
// 2M - 1 (attained where r' theta is a multiple of 2pi).
double fejer_transform(const KernelRecipe& recipe, double theta);

// The same function through the closed form (1/2M) sin^2(M x)/sin^2(x/2) - 1
// at x = r' theta, with a series fallback near the singular points. Agreement
// with the series evaluation is a correctness guard, not an alternative
// definition.
double fejer_transform_closed_form(const KernelRecipe& recipe, double theta);

// Transform at an arbitrary spectral point via the Chebyshev recurrence at
// lambda/2; covers the untempered regime (cosh growth, both signs) without
// complex arithmetic. Matches fejer_transform on the tempered range.
double kernel_transform_at(const KernelRecipe& recipe, double lambda);
double kernel_transform_at(const KernelRecipe& recipe, const SpectralPoint& p);

// Radial-function realization of the recipe on the d-branching tree;
// supported on the ball of radius support_radius.
RadialKernel recipe_radial_kernel(const KernelRecipe& recipe, int d);

/// Convolution by the recipe kernel on a graph, applied through one
/// Chebyshev recurrence sweep that harvests every multiple of r'.
class KernelOperator {
 public:
  KernelOperator(KernelRecipe recipe, const RegularGraph& g);

  const KernelRecipe& recipe() const noexcept { return recipe_; }
  const RegularGraph& graph() const noexcept { return graph_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  // Column-by-column assembly via sweeps; O(n * support * edges), intended
  // for small graphs and for validating the spectral assembly route.
  Eigen::MatrixXd dense_by_sweeps() const;

 private:
  KernelRecipe recipe_;
  RegularGraph graph_;  // by value: a built operator is self-contained
};

// Explicit constant for the measured-norm decay of a recipe operator on a
// certified graph: ||K||_{1->inf} <= kernel_norm_constant(d, alpha) * C *
// d^{-alpha r'} whenever the support fits inside the certified radius.
double kernel_norm_constant(int d, double alpha);

}  // namespace deloc
