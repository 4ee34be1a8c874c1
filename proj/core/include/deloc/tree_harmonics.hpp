#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "deloc/errors.hpp"

namespace deloc {

// Chebyshev polynomial of the first kind, P_n(cos t) = cos(n t), evaluated by
// the three-term recurrence. Valid for all real x; |x| > 1 continues into the
// hyperbolic regime (P_n(cosh r) = cosh(n r)) without complex arithmetic.
double chebyshev_first(int n, double x);

// Chebyshev polynomial of the second kind, Q_n(cos t) = sin((n+1)t)/sin t.
// The recurrence evaluates the limits (n+1)(+-1)^n at x = +-1 exactly.
double chebyshev_second(int n, double x);

/// A point of the spectrum of the normalized adjacency operator, with its
/// angular parametrization lambda = 2 cos(theta).
///
/// Tempered points (|lambda| <= 2) carry theta in [0, pi]; untempered points
/// carry the hyperbolic parameter r > 0 with lambda = +-2 cosh(r) and a sign
/// flag. On a (d+1)-regular graph r <= log(sqrt(d)), attained by the constant
/// eigenfunction.
struct SpectralPoint {
  double lambda = 0.0;
  double theta = 0.0;  // angle when tempered, hyperbolic r when untempered
  bool tempered = true;
  bool negative = false;  // untempered only: lambda < 0

  static SpectralPoint from_lambda(int d, double lambda);
  static SpectralPoint from_theta(double theta);  // tempered branch
};

// Unique radial eigenfunction of the tree adjacency operator with value 1 at
// the root, evaluated at distance `dist`.
double spherical_function(int d, double lambda, int dist);
double spherical_function(int d, const SpectralPoint& p, int dist);

// Integral of cos(2n theta) against the spectral measure of the tree:
// 1 at n = 0, (1-d)/(2 d^n) for n >= 1.
double plancherel_moment(int d, int n);

// Density of the spectral measure on [0, pi], in closed form:
//   w(theta) = 2 d (d+1) sin^2(theta) / (pi ((d-1)^2 + 4 d sin^2(theta)))
// obtained by geometric summation of the cosine series
//   (1/pi) (1 + sum_{n>=1} ((1-d)/d^n) cos(2 n theta)).
double plancherel_density(int d, double theta);

/// Compactly supported radial function on the tree, with an optional cosine
/// series for its spherical transform h(2 cos theta) = sum_j c_j cos(j theta).
struct RadialKernel {
  int d = 2;
  std::vector<double> radial_values;  // k(0), k(1), ..., k(n_max)
  std::optional<std::vector<double>> chebyshev_coefficients;

  int support_radius() const noexcept {
    return static_cast<int>(radial_values.size()) - 1;
  }

  // Max grid disagreement between the radial-sum transform and the cosine
  // series (when present); both representations must describe the same h.
  double representation_disagreement(int grid_points = 1000) const;
};

// Spherical transform h_k(lambda) = k(0) + (d+1) sum_{n>=1} d^{n-1} k(n)
// phi_lambda(n); evaluated with the d^{n/2}-scaled recurrence so that large
// supports do not overflow intermediate factors.
double spherical_transform(const RadialKernel& k, double lambda);
double spherical_transform(const RadialKernel& k, const SpectralPoint& p);

// Evaluates sum_j c_j cos(j theta) for a cosine coefficient vector.
double cosine_series_value(std::span<const double> coeffs, double theta);

// Closed-form radial profile of P_n(T/2) applied to a point mass at the tree
// root, for positive even n:
//   0             when dist odd or dist > n
//   (1-d)/(2 d^{n/2})  when dist < n and even
//   1/(2 d^{n/2})      when dist = n
double chebyshev_delta_value(int d, int n, int dist);

// The same profile packaged as a RadialKernel; its spherical transform is the
// single cosine cos(n theta).
RadialKernel chebyshev_delta_kernel(int d, int n);

struct TreeDeltaProfile {
  std::vector<double> value_at_distance;  // index = distance from root, 0..depth
  // Largest spread of values within one distance class; radial symmetry of
  // the computation makes this exactly zero on the full-tree path.
  double max_radial_deviation = 0.0;
  std::int64_t vertex_count = 0;
  bool full_tree = true;  // false when the level-collapsed fast path was used
};

// Independent evaluation of the same profile on the depth-truncated rooted
// (d+1)-regular tree: applies the Chebyshev recurrence to the point mass with
// the tree adjacency operator and reads off the value at each distance.
// Requires depth > n so truncation cannot reach distances <= n. Above
// `max_full_tree_vertices` the recurrence runs on distance classes instead of
// individual vertices; the two paths perform identical floating-point
// operations per vertex and agree bitwise.
TreeDeltaProfile chebyshev_delta_tree_profile(
    int d, int n, int depth, std::int64_t max_full_tree_vertices = 20000000);

}  // namespace deloc
