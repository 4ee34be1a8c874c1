#include "deloc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace deloc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double angular_distance(double x) { return std::abs(std::remainder(x, kTwoPi)); }

long long dirichlet_approx(double theta0, long long R) {
  if (R < 1) throw error(errc::bad_argument, "R must be at least 1");
  const double threshold = kTwoPi / static_cast<double>(R);
  long long best = 1;
  double best_dist = angular_distance(theta0);
  for (long long r = 1; r <= R; ++r) {
    const double dist = angular_distance(r * theta0);
    if (dist < threshold) return r;
    if (dist < best_dist) { best_dist = dist; best = r; }
  }
  // Unreachable in exact arithmetic (pigeonhole); rounding at the threshold
  // boundary can only be off by ulps, so the minimizer is returned.
  return best;
}

long long dirichlet_approx_convergents(double theta0, long long R) {
  if (R < 1) throw error(errc::bad_argument, "R must be at least 1");
  const double threshold = kTwoPi / static_cast<double>(R);
  double x = theta0 / kTwoPi;
  x -= std::floor(x);

  // Convergent denominators of x in increasing order; the smallest r with
  // |r theta0 mod 2pi| below a threshold is a best approximation of the
  // second kind, hence a convergent denominator.
  long long q_prev = 0, q_cur = 1;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    if (q_cur <= R && angular_distance(q_cur * theta0) < threshold) return q_cur;
    if (frac < 1e-15 || q_cur > R) break;
    frac = 1.0 / frac;
    const double a = std::floor(frac);
    if (a > 4.0e18 / std::max<long long>(q_cur, 1)) break;  // denominator overflow
    frac -= a;
    const long long q_next = static_cast<long long>(a) * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
  }
  return dirichlet_approx(theta0, R);
}

std::pair<long long, long long> select_even_multiple(long long r, long long R,
                                                     double epsilon) {
  if (r < 1 || r > R) throw error(errc::bad_argument, "need 1 <= r <= R");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw error(errc::bad_argument, "epsilon must lie in (0, 1)");
  const double lo = R * epsilon / 32.0;
  long long l = 1;
  if (static_cast<double>(r) < lo) {
    l = static_cast<long long>(std::ceil(lo / r));
    if (static_cast<double>(l) * r > R * epsilon / 16.0)
      throw error(errc::degenerate_range,
                  "no multiple of r inside [R*eps/32, R*eps/16]; parameter "
                  "regime outside the construction's asymptotics");
  }
  return {l, 2 * l * r};
}

bool KernelRecipe::has_flag(const std::string& name) const {
  return std::find(flags.begin(), flags.end(), name) != flags.end();
}

KernelRecipe make_kernel_recipe(double theta0, double epsilon, long long N) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw error(errc::bad_argument, "epsilon must lie in (0, 1)");
  if (N < 1) throw error(errc::bad_argument, "N must be at least 1");
  if (theta0 < -1e-12 || theta0 > kPi + 1e-12)
    throw error(errc::bad_argument, "theta0 outside [0, pi]");

  KernelRecipe recipe;
  recipe.theta0 = std::clamp(theta0, 0.0, kPi);
  recipe.epsilon = epsilon;
  recipe.N = N;
  recipe.M = std::max<long long>(1, static_cast<long long>(std::floor(1.0 / epsilon)));
  recipe.R = static_cast<long long>(std::ceil(N * epsilon / 8.0));
  recipe.r = dirichlet_approx(recipe.theta0, recipe.R);
  std::tie(recipe.l, recipe.r_prime) =
      select_even_multiple(recipe.r, recipe.R, epsilon);

  recipe.cosine_terms.reserve(2 * recipe.M - 1);
  for (long long j = 1; j <= 2 * recipe.M - 1; ++j)
    recipe.cosine_terms.emplace_back(
        j * recipe.r_prime,
        static_cast<double>(2 * recipe.M - j) / static_cast<double>(recipe.M));
  recipe.support_radius = (2 * recipe.M - 1) * recipe.r_prime;

  if (recipe.support_radius > N) recipe.flags.push_back(kFlagSupportExceedsN);
  if (angular_distance(recipe.r_prime * recipe.theta0) >
      kPi / (8.0 * recipe.M) + 1e-12)
    recipe.flags.push_back(kFlagAngleBoundViolated);
  return recipe;
}

double fejer_transform(const KernelRecipe& recipe, double theta) {
  // Every term is 2pi-periodic in x = r' theta and the frequencies are
  // integers, so one exact reduction keeps the arguments small.
  const double x = std::remainder(recipe.r_prime * theta, kTwoPi);
  double h = 0.0;
  for (long long j = 1; j <= 2 * recipe.M - 1; ++j)
    h += static_cast<double>(2 * recipe.M - j) / recipe.M * std::cos(j * x);
  return h;
}

double fejer_transform_closed_form(const KernelRecipe& recipe, double theta) {
  const double x = std::remainder(recipe.r_prime * theta, kTwoPi);
  const double s = std::sin(0.5 * x);
  if (std::abs(s) < 1e-7) return fejer_transform(recipe, theta);
  const double ratio = std::sin(recipe.M * x) / s;
  return ratio * ratio / (2.0 * recipe.M) - 1.0;
}

double kernel_transform_at(const KernelRecipe& recipe, double lambda) {
  const double x = lambda / 2.0;
  double h = 0.0;
  // One scalar recurrence sweep to the top frequency, harvesting multiples.
  double prev = 1.0, cur = x;
  long long m = 1;
  const long long top = recipe.support_radius;
  auto take = [&](long long freq, double value) {
    if (freq % recipe.r_prime == 0) {
      const long long j = freq / recipe.r_prime;
      if (j >= 1 && j <= 2 * recipe.M - 1)
        h += static_cast<double>(2 * recipe.M - j) / recipe.M * value;
    }
  };
  take(1, cur);
  for (m = 2; m <= top; ++m) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
    take(m, cur);
  }
  return h;
}

double kernel_transform_at(const KernelRecipe& recipe, const SpectralPoint& p) {
  return kernel_transform_at(recipe, p.lambda);
}

RadialKernel recipe_radial_kernel(const KernelRecipe& recipe, int d) {
  RadialKernel k;
  k.d = d;
  k.radial_values.assign(recipe.support_radius + 1, 0.0);
  for (const auto& [freq, coeff] : recipe.cosine_terms) {
    const int n = static_cast<int>(freq);
    for (int dist = 0; dist <= n; dist += 2)
      k.radial_values[dist] += coeff * chebyshev_delta_value(d, n, dist);
  }
  std::vector<double> coeffs(recipe.support_radius + 1, 0.0);
  for (const auto& [freq, coeff] : recipe.cosine_terms)
    coeffs[static_cast<std::size_t>(freq)] = coeff;
  k.chebyshev_coefficients = std::move(coeffs);
  return k;
}

KernelOperator::KernelOperator(KernelRecipe recipe, const RegularGraph& g)
    : recipe_(std::move(recipe)), graph_(g) {
  // cosh-regime growth at the top of the spectrum; beyond exp(700) the sweep
  // leaves double range.
  const double top_r = std::log(std::sqrt(static_cast<double>(g.d())));
  if (recipe_.support_radius * top_r > 700.0 &&
      !recipe_.has_flag(kFlagOverflowRisk))
    recipe_.flags.push_back(kFlagOverflowRisk);
}

Eigen::VectorXd KernelOperator::apply(const Eigen::VectorXd& v) const {
  return apply_cosine_polynomial(graph_, recipe_.cosine_terms, v);
}

Eigen::MatrixXd KernelOperator::dense_by_sweeps() const {
  const int n = graph_.vertex_count();
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(n);
  for (int x = 0; x < n; ++x) {
    basis[x] = 1.0;
    k.col(x) = apply(basis);
    basis[x] = 0.0;
  }
  return k;
}

double kernel_norm_constant(int d, double alpha) {
  // Coefficients are at most 2 and the frequencies step by r' >= 1, so the
  // per-frequency bound c(d, alpha) C d^{-alpha j r'} sums to at most
  // 2 c(d, alpha) / (1 - d^{-alpha}) times the leading term.
  return 2.0 * chebyshev_norm_constant(d, alpha) /
         (1.0 - std::pow(static_cast<double>(d), -alpha));
}

}  // namespace deloc
