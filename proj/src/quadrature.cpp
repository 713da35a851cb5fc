#include "rlab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace rlab {

void gauss_legendre(int m, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  // Eigen-decomposition of the symmetric Jacobi matrix of the Legendre
  // recurrence; nodes are the eigenvalues, weights 2 v_0^2.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double bk = k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = bk;
    J(k, k - 1) = bk;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(static_cast<size_t>(m));
  weights.resize(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    nodes[static_cast<size_t>(k)] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights[static_cast<size_t>(k)] = 2.0 * v0 * v0;
  }
}

double sigma_bh_quadrature(const MetricDefinition& def,
                           std::span<const double> x, int level) {
  const int n = def.dim;
  const Eigen::MatrixXd a = def.alpha_matrix(x);
  const Eigen::VectorXd b = def.beta_covector(x);
  const auto finv_n = [&](const Eigen::VectorXd& w) {
    const double F = std::sqrt(w.dot(a * w)) + b.dot(w);
    return std::pow(F, -n);
  };

  const double pi = std::numbers::pi;
  // Polar angles phi_1..phi_{n-2} in [0, pi] by Gauss-Legendre (the
  // sin-power measure is folded into the weight); the last, periodic angle
  // by the trapezoid rule.
  std::vector<double> gl_x, gl_w;
  if (n >= 3) gauss_legendre(level, gl_x, gl_w);
  const int mper = 2 * level;

  const int npolar = n - 2;
  std::vector<int> idx(static_cast<size_t>(npolar), 0);
  double num = 0.0, den = 0.0;
  Eigen::VectorXd w(n);
  while (true) {
    // Accumulate the polar part of the direction and its weight.
    double weight = 1.0;
    double sin_prod = 1.0;
    for (int k = 0; k < npolar; ++k) {
      const double phi =
          0.5 * pi * (gl_x[static_cast<size_t>(idx[static_cast<size_t>(k)])] + 1.0);
      const double wk = 0.5 * pi * gl_w[static_cast<size_t>(idx[static_cast<size_t>(k)])];
      const double s = std::sin(phi);
      weight *= wk * std::pow(s, n - 2 - k);
      w(k) = sin_prod * std::cos(phi);
      sin_prod *= s;
    }
    for (int t = 0; t < mper; ++t) {
      const double th = 2.0 * pi * t / mper;
      w(n - 2) = sin_prod * std::cos(th);
      w(n - 1) = sin_prod * std::sin(th);
      num += weight;
      den += weight * finv_n(w);
    }
    // Advance the polar multi-index.
    int k = npolar - 1;
    while (k >= 0 && ++idx[static_cast<size_t>(k)] == level) {
      idx[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return num / den;
}

}  // namespace rlab
