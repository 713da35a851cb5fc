#include "rlab/oracle.hpp"

#include <cmath>

namespace rlab {

DefCurvature curvature_def(const MetricDefinition& def,
                           std::span<const double> x, std::span<const double> y) {
  const int n = def.dim;
  auto D = def_jets<double>(def, x, y, 6, /*want_ric=*/true);

  DefCurvature out;
  out.F = std::sqrt(D.fsq.value());
  out.g.setZero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      out.g(k, l) = D.g[static_cast<size_t>(k * n + l)].value();
  out.g_inv = out.g.inverse();
  out.ric = D.ric.value();

  out.ric_ij.setZero(n, n);
  std::vector<int> mi(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(mi.begin(), mi.end(), 0);
      mi[static_cast<size_t>(n + i)] += 1;
      mi[static_cast<size_t>(n + j)] += 1;
      out.ric_ij(i, j) = 0.5 * D.ric.partial(mi);
    }
  out.r = (out.g_inv * out.ric_ij).trace();
  return out;
}

double ricci_def(const MetricDefinition& def, std::span<const double> x,
                 std::span<const double> y) {
  return def_jets<double>(def, x, y, 4, /*want_ric=*/true).ric.value();
}

Eigen::MatrixXd ricci_tensor_nested(const MetricDefinition& def,
                                    std::span<const double> x,
                                    std::span<const double> y) {
  const int n = def.dim;
  auto ylayout = JetLayout::get(n, 2);
  std::vector<Jet> xj, yj;
  xj.reserve(static_cast<size_t>(n));
  yj.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xj.push_back(Jet(x[static_cast<size_t>(i)]));
    yj.push_back(Jet::variable(ylayout, i, y[static_cast<size_t>(i)]));
  }
  auto D = def_jets<Jet>(def, xj, yj, 4, /*want_ric=*/true);
  const Jet ric_of_y = D.ric.value();

  Eigen::MatrixXd out(n, n);
  std::vector<int> mi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(mi.begin(), mi.end(), 0);
      mi[static_cast<size_t>(i)] += 1;
      mi[static_cast<size_t>(j)] += 1;
      out(i, j) = 0.5 * ric_of_y.partial(mi);
    }
  return out;
}

Eigen::VectorXd spray_def(const MetricDefinition& def, std::span<const double> x,
                          std::span<const double> y) {
  const int n = def.dim;
  auto D = def_jets<double>(def, x, y, 2, /*want_ric=*/false);
  Eigen::VectorXd G(n);
  for (int k = 0; k < n; ++k) G(k) = D.G[static_cast<size_t>(k)].value();
  return G;
}

double spray_ydiv_def(const MetricDefinition& def, std::span<const double> x,
                      std::span<const double> y) {
  const int n = def.dim;
  auto D = def_jets<double>(def, x, y, 3, /*want_ric=*/false);
  double div = 0;
  for (int m = 0; m < n; ++m)
    div += D.G[static_cast<size_t>(m)].deriv(n + m).value();
  return div;
}

}  // namespace rlab
