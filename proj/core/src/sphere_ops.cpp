#include "deloc/sphere_ops.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace deloc {

Eigen::MatrixXd adjacency_matrix(const RegularGraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) a(v, u) += 1.0;
  return a;
}

Eigen::MatrixXd t_operator(const RegularGraph& g) {
  return adjacency_matrix(g) / std::sqrt(static_cast<double>(g.d()));
}

std::vector<Eigen::MatrixXd> nonbacktracking_walk_matrices(
    const Eigen::MatrixXd& adjacency, int d, int max_n) {
  if (max_n < 0) throw error(errc::bad_argument, "max_n must be nonnegative");
  const auto n = adjacency.rows();
  std::vector<Eigen::MatrixXd> b;
  b.reserve(max_n + 1);
  b.push_back(Eigen::MatrixXd::Identity(n, n));
  if (max_n >= 1) b.push_back(adjacency);
  if (max_n >= 2)
    b.push_back(adjacency * adjacency -
                (d + 1) * Eigen::MatrixXd::Identity(n, n));
  for (int m = 3; m <= max_n; ++m)
    b.push_back(adjacency * b[m - 1] - d * b[m - 2]);
  return b;
}

SphereOperatorFamily::SphereOperatorFamily(const RegularGraph& g, int max_n)
    : graph_(g) {
  s_ = nonbacktracking_walk_matrices(adjacency_matrix(g), g.d(), max_n);
  for (int m = 0; m <= max_n; ++m)
    s_[m] *= std::pow(static_cast<double>(g.d()), -0.5 * m);
}

void apply_t(const RegularGraph& g, const Eigen::VectorXd& in,
             Eigen::VectorXd& out) {
  const int n = g.vertex_count();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(g.d()));
  out.resize(n);
  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (int u : g.neighbors(v)) acc += in[u];
    out[v] = acc * inv_sqrt_d;
  }
}

Eigen::VectorXd apply_chebyshev_of_t(const RegularGraph& g, int n,
                                     const Eigen::VectorXd& v) {
  std::pair<long long, double> term{n, 1.0};
  return apply_cosine_polynomial(g, {&term, 1}, v);
}

Eigen::VectorXd apply_cosine_polynomial(
    const RegularGraph& g,
    std::span<const std::pair<long long, double>> terms,
    const Eigen::VectorXd& v) {
  if (v.size() != g.vertex_count())
    throw error(errc::bad_argument, "vector length must match vertex count");
  long long max_freq = 0;
  for (const auto& [freq, coeff] : terms) {
    if (freq < 0) throw error(errc::bad_argument, "negative frequency");
    max_freq = std::max(max_freq, freq);
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  auto harvest = [&](long long m, const Eigen::VectorXd& w) {
    for (const auto& [freq, coeff] : terms)
      if (freq == m) out += coeff * w;
  };

  Eigen::VectorXd prev = v;
  harvest(0, prev);
  if (max_freq == 0) return out;

  Eigen::VectorXd cur(v.size()), next(v.size());
  apply_t(g, v, cur);
  cur *= 0.5;  // w_1 = (T/2) v
  harvest(1, cur);
  for (long long m = 2; m <= max_freq; ++m) {
    apply_t(g, cur, next);
    next -= prev;
    std::swap(prev, cur);
    std::swap(cur, next);
    harvest(m, cur);
  }
  return out;
}

double sphere_decomposition_discrepancy(const SphereOperatorFamily& family,
                                        int n) {
  if (n < 2 || n % 2 != 0)
    throw error(errc::n_odd, "decomposition requires positive even n");
  if (n > family.max_n())
    throw error(errc::bad_argument, "sphere family built only to max_n = " +
                                        std::to_string(family.max_n()));
  const RegularGraph& g = family.graph();
  const int d = g.d();
  const auto size = family.s(0).rows();

  // Left side: P_n(T/2) by the dense matrix recurrence.
  const Eigen::MatrixXd t = t_operator(g);
  Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(size, size);
  Eigen::MatrixXd cur = 0.5 * t;
  for (int m = 2; m <= n; ++m) {
    Eigen::MatrixXd next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }

  // Right side: expansion in sphere operators.
  const double head = (1.0 - d) / (2.0 * std::pow(static_cast<double>(d), n / 2));
  Eigen::MatrixXd rhs = 0.5 * family.s(n);
  double dpow = 1.0;
  for (int j = 0; j < n / 2; ++j) {
    rhs += head * dpow * family.s(2 * j);
    dpow *= d;
  }
  return (cur - rhs).cwiseAbs().maxCoeff();
}

double sphere_decomposition_discrepancy(const RegularGraph& g, int n) {
  return sphere_decomposition_discrepancy(SphereOperatorFamily(g, n), n);
}

bool sphere_norm_is_exact(double p) noexcept { return p == 1.0 || p == 2.0; }

double sphere_norm(const SphereOperatorFamily& family, int n, double p) {
  if (p < 1.0 || p > 2.0)
    throw error(errc::unsupported_exponent,
                "p must lie in [1, 2], got " + std::to_string(p));
  const Eigen::MatrixXd& s = family.s(n);
  const double max_entry = s.cwiseAbs().maxCoeff();
  if (p == 1.0) return max_entry;  // ||S||_{1->inf} = sup_x ||S delta_x||_inf

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  const double spectral = es.eigenvalues().cwiseAbs().maxCoeff();
  if (p == 2.0) return spectral;

  // Riesz-Thorin between (1, inf) and (2, 2); upper bound only.
  return std::pow(max_entry, 2.0 / p - 1.0) * std::pow(spectral, 2.0 - 2.0 / p);
}

ConditionFit fit_condition_from_norms(std::vector<double> norms, int d,
                                      double p, std::optional<double> C,
                                      std::optional<double> alpha) {
  if (norms.empty()) throw error(errc::bad_argument, "no norms given");
  ConditionFit fit;
  fit.p = p;
  fit.per_n_norms = std::move(norms);
  const auto& v = fit.per_n_norms;
  const double ln_d = std::log(static_cast<double>(d));

  if (C && alpha) {
    fit.C = *C;
    fit.alpha = *alpha;
    fit.c_alpha_given = true;
  } else {
    fit.c_alpha_given = false;
    // Decaying prefix; the first step always decays on a simple graph
    // (||S_1|| = d^{-1/2} < 1), so an immediate increase is degenerate.
    std::size_t k = 1;
    while (k < v.size() && v[k] <= v[k - 1] * (1.0 + 1e-12)) ++k;
    if (k == 1 && v.size() > 1 && v[1] > v[0]) {
      fit.no_decay = true;
      fit.C = *std::max_element(v.begin(), v.end());
      fit.alpha = 0.0;
      fit.N = 0;
      return fit;
    }
    // Least squares of log ||S_n|| = log C - alpha n log d over the prefix.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double x = static_cast<double>(i);
      const double y = std::log(std::max(v[i], 1e-300));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double m = static_cast<double>(k);
    const double slope = (m * sxy - sx * sy) / std::max(m * sxx - sx * sx, 1e-300);
    fit.alpha = -slope / ln_d;
    fit.C = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      fit.C = std::max(fit.C, v[i] * std::pow(static_cast<double>(d),
                                              fit.alpha * static_cast<double>(i)));
  }

  int admissible = -1;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const double cap =
        fit.C * std::pow(static_cast<double>(d), -fit.alpha * static_cast<double>(m));
    if (v[m] <= cap * (1.0 + 1e-12)) admissible = static_cast<int>(m);
    else break;
  }
  fit.N = std::max(admissible, 0);
  return fit;
}

ConditionFit fit_condition(const SphereOperatorFamily& family, double p,
                           std::optional<double> C,
                           std::optional<double> alpha) {
  std::vector<double> norms;
  norms.reserve(family.max_n() + 1);
  for (int m = 0; m <= family.max_n(); ++m)
    norms.push_back(sphere_norm(family, m, p));
  return fit_condition_from_norms(std::move(norms), family.graph().d(), p, C,
                                  alpha);
}

double chebyshev_norm_constant(int d, double alpha) {
  if (alpha <= 0.0)
    throw error(errc::bad_argument, "alpha must be positive");
  return d / (1.0 - std::pow(static_cast<double>(d), -2.0 * alpha));
}

}  // namespace deloc
