#include "deloc/tree_harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace deloc {

namespace {
constexpr double kPi = std::numbers::pi;

void require_degree(int d) {
  if (d < 2)
    throw error(errc::unsupported_degree, "degree parameter d >= 2 required");
}
}  // namespace

double chebyshev_first(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double prev = 1.0, cur = x;
  for (int m = 2; m <= n; ++m) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double chebyshev_second(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return 2.0 * x;
  double prev = 1.0, cur = 2.0 * x;
  for (int m = 2; m <= n; ++m) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SpectralPoint SpectralPoint::from_lambda(int d, double lambda) {
  require_degree(d);
  const double top = (d + 1) / std::sqrt(static_cast<double>(d));
  if (std::abs(lambda) > top * (1.0 + 1e-9))
    throw error(errc::bad_argument,
                "lambda = " + std::to_string(lambda) +
                    " outside the spectrum of the normalized adjacency");
  SpectralPoint p;
  p.lambda = lambda;
  const double half = lambda / 2.0;
  // Absorb rounding at the tempered boundary before the arccos branch.
  if (std::abs(half) <= 1.0 + 1e-12) {
    p.tempered = true;
    p.theta = std::acos(std::clamp(half, -1.0, 1.0));
  } else {
    p.tempered = false;
    p.negative = lambda < 0.0;
    p.theta = std::acosh(std::abs(half));
  }
  return p;
}

SpectralPoint SpectralPoint::from_theta(double theta) {
  if (theta < -1e-12 || theta > kPi + 1e-12)
    throw error(errc::bad_argument, "theta outside [0, pi]");
  SpectralPoint p;
  p.theta = std::clamp(theta, 0.0, kPi);
  p.lambda = 2.0 * std::cos(p.theta);
  p.tempered = true;
  return p;
}

double spherical_function(int d, double lambda, int dist) {
  require_degree(d);
  if (dist < 0) throw error(errc::bad_argument, "distance must be nonnegative");
  const double x = lambda / 2.0;
  const double bracket =
      2.0 * chebyshev_first(dist, x) + (d - 1) * chebyshev_second(dist, x);
  return std::pow(static_cast<double>(d), -0.5 * dist) * bracket / (d + 1);
}

double spherical_function(int d, const SpectralPoint& p, int dist) {
  return spherical_function(d, p.lambda, dist);
}

double plancherel_moment(int d, int n) {
  require_degree(d);
  if (n < 0) throw error(errc::bad_argument, "moment order must be nonnegative");
  if (n == 0) return 1.0;
  return (1.0 - d) / (2.0 * std::pow(static_cast<double>(d), n));
}

double plancherel_density(int d, double theta) {
  require_degree(d);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double dd = static_cast<double>(d);
  return 2.0 * dd * (dd + 1.0) * s2 /
         (kPi * ((dd - 1.0) * (dd - 1.0) + 4.0 * dd * s2));
}

double spherical_transform(const RadialKernel& k, double lambda) {
  require_degree(k.d);
  if (k.radial_values.empty())
    throw error(errc::bad_argument, "kernel has no radial values");
  const int d = k.d;
  const double x = lambda / 2.0;
  const double sd = std::sqrt(static_cast<double>(d));

  // h = k(0) + ((d+1)/d) sum_{n>=1} d^{n/2} k(n) g(n) with
  // g(n) = (2 P_n + (d-1) Q_n) / (d+1) = d^{n/2} phi_lambda(n); grouping the
  // sphere size (d+1) d^{n-1} with d^{-n/2} keeps every factor representable.
  double h = k.radial_values[0];
  double p_prev = 1.0, p_cur = x;       // P_0, P_1
  double q_prev = 1.0, q_cur = 2.0 * x; // Q_0, Q_1
  double scale = 1.0;
  const int nmax = k.support_radius();
  for (int n = 1; n <= nmax; ++n) {
    scale *= sd;
    const double g = (2.0 * p_cur + (d - 1) * q_cur) / (d + 1);
    h += (d + 1.0) / d * scale * k.radial_values[n] * g;
    const double p_next = 2.0 * x * p_cur - p_prev;
    const double q_next = 2.0 * x * q_cur - q_prev;
    p_prev = p_cur; p_cur = p_next;
    q_prev = q_cur; q_cur = q_next;
  }
  return h;
}

double spherical_transform(const RadialKernel& k, const SpectralPoint& p) {
  return spherical_transform(k, p.lambda);
}

double cosine_series_value(std::span<const double> coeffs, double theta) {
  double h = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0.0) h += coeffs[j] * std::cos(j * theta);
  return h;
}

double RadialKernel::representation_disagreement(int grid_points) const {
  if (!chebyshev_coefficients) return 0.0;
  double worst = 0.0;
  for (int i = 0; i <= grid_points; ++i) {
    const double theta = kPi * i / grid_points;
    const double via_series = cosine_series_value(*chebyshev_coefficients, theta);
    const double via_sum = spherical_transform(*this, 2.0 * std::cos(theta));
    worst = std::max(worst, std::abs(via_series - via_sum));
  }
  return worst;
}

double chebyshev_delta_value(int d, int n, int dist) {
  require_degree(d);
  if (n < 2 || n % 2 != 0)
    throw error(errc::n_odd, "profile requires a positive even order, got " +
                                 std::to_string(n));
  if (dist < 0) throw error(errc::bad_argument, "distance must be nonnegative");
  if (dist % 2 != 0 || dist > n) return 0.0;
  const double half_power = std::pow(static_cast<double>(d), n / 2);
  if (dist == n) return 1.0 / (2.0 * half_power);
  return (1.0 - d) / (2.0 * half_power);
}

RadialKernel chebyshev_delta_kernel(int d, int n) {
  RadialKernel k;
  k.d = d;
  k.radial_values.resize(n + 1);
  for (int dist = 0; dist <= n; ++dist)
    k.radial_values[dist] = chebyshev_delta_value(d, n, dist);
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[n] = 1.0;
  k.chebyshev_coefficients = std::move(coeffs);
  return k;
}

namespace {

// Rooted (d+1)-regular tree truncated at `depth`, laid out level by level.
// The root's children are vertices 1..d+1; every later vertex has d children
// located at child_base + index_within_level * d.
struct TreeLevels {
  std::vector<std::int64_t> offset;  // offset[l] = first vertex of level l
  std::vector<std::int64_t> size;
  int depth;
  std::int64_t total;
};

TreeLevels tree_levels(int d, int depth) {
  TreeLevels t;
  t.depth = depth;
  t.size.resize(depth + 1);
  t.offset.resize(depth + 2);
  t.size[0] = 1;
  if (depth >= 1) t.size[1] = d + 1;
  for (int l = 2; l <= depth; ++l) t.size[l] = t.size[l - 1] * d;
  t.offset[0] = 0;
  for (int l = 0; l <= depth; ++l) t.offset[l + 1] = t.offset[l] + t.size[l];
  t.total = t.offset[depth + 1];
  return t;
}

// out[x] = (T in)(x) - out[x], streamed level by level. Summation order per
// vertex is fixed (parent first, then children in index order); all vertices
// of one level therefore perform identical operations on identical inputs,
// which keeps the profile bitwise constant per distance class.
void tree_apply_sub(const TreeLevels& t, int d, const double* in, double* out) {
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  {
    double acc = 0.0;
    for (int c = 0; c <= d; ++c) acc += in[1 + c];
    out[0] = acc * inv_sqrt_d - out[0];
  }
  for (int l = 1; l <= t.depth; ++l) {
    const std::int64_t base = t.offset[l];
    const std::int64_t parent_base = t.offset[l - 1];
    const std::int64_t child_base = t.offset[l + 1];
    const bool leaf = (l == t.depth);
    for (std::int64_t i = 0; i < t.size[l]; ++i) {
      double acc = in[l == 1 ? 0 : parent_base + i / d];
      if (!leaf) {
        const double* child = in + child_base + i * d;
        for (int c = 0; c < d; ++c) acc += child[c];
      }
      out[base + i] = acc * inv_sqrt_d - out[base + i];
    }
  }
}

// Distance-class version of tree_apply_sub with the same per-vertex
// floating-point operation sequence.
void collapsed_apply_sub(int d, int depth, const double* in, double* out) {
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<double> next(depth + 1);
  {
    double acc = 0.0;
    for (int c = 0; c <= d; ++c) acc += in[1];
    next[0] = acc * inv_sqrt_d - out[0];
  }
  for (int l = 1; l <= depth; ++l) {
    double acc = in[l - 1];
    if (l < depth)
      for (int c = 0; c < d; ++c) acc += in[l + 1];
    next[l] = acc * inv_sqrt_d - out[l];
  }
  std::copy(next.begin(), next.end(), out);
}

}  // namespace

TreeDeltaProfile chebyshev_delta_tree_profile(int d, int n, int depth,
                                              std::int64_t max_full_tree_vertices) {
  require_degree(d);
  if (n < 2 || n % 2 != 0)
    throw error(errc::n_odd, "profile requires a positive even order");
  if (depth <= n)
    throw error(errc::depth_too_small,
                "depth must exceed the polynomial order (got depth = " +
                    std::to_string(depth) + ", order = " + std::to_string(n) + ")");

  const TreeLevels t = tree_levels(d, depth);
  TreeDeltaProfile result;
  result.vertex_count = t.total;
  result.full_tree = t.total <= max_full_tree_vertices;

  if (result.full_tree) {
    // w_{m+1} = T w_m - w_{m-1}; `prev` is overwritten in place with the new
    // iterate, so only two vertex-indexed buffers are live.
    std::vector<double> prev(t.total, 0.0), cur(t.total, 0.0);
    prev[0] = 1.0;                       // w_0 = point mass at the root
    tree_apply_sub(t, d, prev.data(), cur.data());
    for (std::int64_t i = 0; i < t.total; ++i) cur[i] *= 0.5;  // w_1 = (T/2) w_0
    for (int m = 2; m <= n; ++m) {
      tree_apply_sub(t, d, cur.data(), prev.data());
      std::swap(prev, cur);
    }
    result.value_at_distance.resize(depth + 1);
    for (int l = 0; l <= depth; ++l) {
      const double first = cur[t.offset[l]];
      double lo = first, hi = first;
      for (std::int64_t i = 1; i < t.size[l]; ++i) {
        lo = std::min(lo, cur[t.offset[l] + i]);
        hi = std::max(hi, cur[t.offset[l] + i]);
      }
      result.value_at_distance[l] = first;
      result.max_radial_deviation = std::max(result.max_radial_deviation, hi - lo);
    }
  } else {
    std::vector<double> prev(depth + 1, 0.0), cur(depth + 1, 0.0);
    prev[0] = 1.0;
    collapsed_apply_sub(d, depth, prev.data(), cur.data());
    for (double& v : cur) v *= 0.5;
    for (int m = 2; m <= n; ++m) {
      collapsed_apply_sub(d, depth, cur.data(), prev.data());
      std::swap(prev, cur);
    }
    result.value_at_distance = cur;
  }
  return result;
}

}  // namespace deloc
