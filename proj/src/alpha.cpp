#include "rlab/alpha.hpp"

#include <algorithm>
#include <cmath>

#include "rlab/jet.hpp"

namespace rlab {

AlphaData alpha_data(const MetricDefinition& def, std::span<const double> x) {
  const int n = def.dim;
  AlphaData A;
  A.n = n;

  // Order-2 coordinate jets give values and the first two derivatives of
  // every metric entry in one evaluation each.
  auto layout = JetLayout::get(n, 2);
  std::vector<Jet> seeds = seed_jets<double>(layout, x);
  const std::span<const Jet> xs(seeds);
  const std::span<const double> params(def.param_values);

  A.a.setZero(n, n);
  A.da.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  A.dda.assign(static_cast<size_t>(n),
               std::vector<Eigen::MatrixXd>(static_cast<size_t>(n),
                                            Eigen::MatrixXd::Zero(n, n)));
  std::vector<int> mi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Jet aij = eval<Jet>(*def.a_entry(i, j), xs, params);
      A.a(i, j) = A.a(j, i) = aij.value();
      for (int k = 0; k < n; ++k) {
        std::fill(mi.begin(), mi.end(), 0);
        mi[static_cast<size_t>(k)] = 1;
        const double d1 = aij.partial(mi);
        A.da[static_cast<size_t>(k)](i, j) = d1;
        A.da[static_cast<size_t>(k)](j, i) = d1;
        for (int l = 0; l < n; ++l) {
          std::fill(mi.begin(), mi.end(), 0);
          mi[static_cast<size_t>(k)] += 1;
          mi[static_cast<size_t>(l)] += 1;
          const double d2 = aij.partial(mi);
          A.dda[static_cast<size_t>(k)][static_cast<size_t>(l)](i, j) = d2;
          A.dda[static_cast<size_t>(k)][static_cast<size_t>(l)](j, i) = d2;
        }
      }
    }

  A.a_inv = A.a.inverse();
  A.sigma_alpha = std::sqrt(A.a.determinant());

  // Gamma^m_{ij} = a^{ml} (d_i a_{lj} + d_j a_{li} - d_l a_{ij}) / 2.
  A.gamma.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double g = 0;
        for (int l = 0; l < n; ++l)
          g += A.a_inv(m, l) *
               (A.da[static_cast<size_t>(i)](l, j) +
                A.da[static_cast<size_t>(j)](l, i) -
                A.da[static_cast<size_t>(l)](i, j));
        A.gamma[static_cast<size_t>(m)](i, j) = 0.5 * g;
        A.gamma[static_cast<size_t>(m)](j, i) = 0.5 * g;
      }

  // d_k a^{ml} = -a^{mp} (d_k a_{pq}) a^{ql}.
  std::vector<Eigen::MatrixXd> da_inv(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    da_inv[static_cast<size_t>(k)] =
        -A.a_inv * A.da[static_cast<size_t>(k)] * A.a_inv;

  A.dgamma.assign(static_cast<size_t>(n),
                  std::vector<Eigen::MatrixXd>(static_cast<size_t>(n),
                                               Eigen::MatrixXd::Zero(n, n)));
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double g = 0;
          for (int l = 0; l < n; ++l) {
            g += da_inv[static_cast<size_t>(k)](m, l) *
                 (A.da[static_cast<size_t>(i)](l, j) +
                  A.da[static_cast<size_t>(j)](l, i) -
                  A.da[static_cast<size_t>(l)](i, j));
            g += A.a_inv(m, l) *
                 (A.dda[static_cast<size_t>(k)][static_cast<size_t>(i)](l, j) +
                  A.dda[static_cast<size_t>(k)][static_cast<size_t>(j)](l, i) -
                  A.dda[static_cast<size_t>(k)][static_cast<size_t>(l)](i, j));
          }
          A.dgamma[static_cast<size_t>(k)][static_cast<size_t>(m)](i, j) = 0.5 * g;
          A.dgamma[static_cast<size_t>(k)][static_cast<size_t>(m)](j, i) = 0.5 * g;
        }

  // Ric_{ij} = d_m Gamma^m_{ij} - d_j Gamma^m_{mi}
  //          + Gamma^m_{ml} Gamma^l_{ij} - Gamma^m_{jl} Gamma^l_{mi}.
  A.ricci.setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double ric = 0;
      for (int m = 0; m < n; ++m) {
        ric += A.dgamma[static_cast<size_t>(m)][static_cast<size_t>(m)](i, j);
        ric -= A.dgamma[static_cast<size_t>(j)][static_cast<size_t>(m)](m, i);
        for (int l = 0; l < n; ++l) {
          ric += A.gamma[static_cast<size_t>(m)](m, l) *
                 A.gamma[static_cast<size_t>(l)](i, j);
          ric -= A.gamma[static_cast<size_t>(m)](j, l) *
                 A.gamma[static_cast<size_t>(l)](m, i);
        }
      }
      A.ricci(i, j) = ric;
    }
  // Symmetrize away the last bits of floating-point asymmetry.
  A.ricci = 0.5 * (A.ricci + A.ricci.transpose()).eval();

  A.r_alpha = (A.a_inv * A.ricci).trace();
  return A;
}

double riemann_component(const AlphaData& A, int l, int i, int j, int k) {
  const auto lu = static_cast<size_t>(l);
  double v = A.dgamma[static_cast<size_t>(j)][lu](i, k) -
             A.dgamma[static_cast<size_t>(k)][lu](i, j);
  for (int m = 0; m < A.n; ++m)
    v += A.gamma[lu](j, m) * A.gamma[static_cast<size_t>(m)](i, k) -
         A.gamma[lu](k, m) * A.gamma[static_cast<size_t>(m)](i, j);
  return v;
}

}  // namespace rlab
