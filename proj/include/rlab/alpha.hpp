#pragma once

// Pointwise Riemannian data of the underlying metric a_{ij}: Christoffel
// symbols with their first derivatives, the Ricci tensor, and the scalar
// curvature.  Everything downstream (covariant derivatives of the one-form,
// the closed-form Ricci expressions) consumes this struct.

#include <Eigen/Dense>
#include <vector>

#include "rlab/metric.hpp"

namespace rlab {

struct AlphaData {
  int n = 0;
  Eigen::MatrixXd a;      // a_{ij}
  Eigen::MatrixXd a_inv;  // a^{ij}
  // da[k](i,j) = d_k a_{ij};  dda[k][l](i,j) = d_k d_l a_{ij}  (l >= k filled,
  // both orders stored for convenience).
  std::vector<Eigen::MatrixXd> da;
  std::vector<std::vector<Eigen::MatrixXd>> dda;
  // gamma[m](i,j) = Gamma^m_{ij};  dgamma[k][m](i,j) = d_k Gamma^m_{ij}.
  std::vector<Eigen::MatrixXd> gamma;
  std::vector<std::vector<Eigen::MatrixXd>> dgamma;
  Eigen::MatrixXd ricci;    // Ric_{ij}
  double r_alpha = 0.0;     // a^{ij} Ric_{ij}
  double sigma_alpha = 0.0; // sqrt(det a)
};

AlphaData alpha_data(const MetricDefinition& def, std::span<const double> x);

// R^l_{ijk} = d_j Gamma^l_{ik} - d_k Gamma^l_{ij}
//           + Gamma^l_{jm} Gamma^m_{ik} - Gamma^l_{km} Gamma^m_{ij},
// the convention under which Ric_{ij} = R^m_{imj} and
// b_{i;j;k} - b_{i;k;j} = R^m_{ijk} b_m.
double riemann_component(const AlphaData& A, int l, int i, int j, int k);

}  // namespace rlab
