#include "rlab/beta.hpp"

#include <algorithm>
#include <cmath>

#include "rlab/jet.hpp"

namespace rlab {

BetaData beta_data(const MetricDefinition& def, const AlphaData& A,
                   std::span<const double> x) {
  const int n = def.dim;
  BetaData B;
  B.n = n;

  // Raw partials of b_i from one order-2 jet evaluation per component.
  auto layout = JetLayout::get(n, 2);
  std::vector<Jet> seeds = seed_jets<double>(layout, x);
  const std::span<const Jet> xs(seeds);
  const std::span<const double> params(def.param_values);

  Eigen::VectorXd b(n);
  Eigen::MatrixXd db_raw(n, n);                   // db_raw(i,j) = d_j b_i
  std::vector<Eigen::MatrixXd> ddb_raw(            // ddb_raw[k](i,j) = d_k d_j b_i
      static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  std::vector<int> mi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Jet bi = eval<Jet>(*def.b[static_cast<size_t>(i)], xs, params);
    b(i) = bi.value();
    for (int j = 0; j < n; ++j) {
      std::fill(mi.begin(), mi.end(), 0);
      mi[static_cast<size_t>(j)] = 1;
      db_raw(i, j) = bi.partial(mi);
      for (int k = 0; k < n; ++k) {
        std::fill(mi.begin(), mi.end(), 0);
        mi[static_cast<size_t>(j)] += 1;
        mi[static_cast<size_t>(k)] += 1;
        ddb_raw[static_cast<size_t>(k)](i, j) = bi.partial(mi);
      }
    }
  }

  B.b_lo = b;
  B.b_up = A.a_inv * b;
  B.b2 = B.b_lo.dot(B.b_up);

  // First covariant derivative b_{i;j} = d_j b_i - Gamma^m_{ij} b_m.
  B.db.setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = db_raw(i, j);
      for (int m = 0; m < n; ++m) v -= A.gamma[static_cast<size_t>(m)](i, j) * b(m);
      B.db(i, j) = v;
    }

  // Second covariant derivative
  //   b_{i;j;k} = d_k b_{i;j} - Gamma^m_{ik} b_{m;j} - Gamma^m_{jk} b_{i;m},
  //   d_k b_{i;j} = d_k d_j b_i - (d_k Gamma^m_{ij}) b_m - Gamma^m_{ij} d_k b_m.
  B.ddb.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = ddb_raw[static_cast<size_t>(k)](i, j);
        for (int m = 0; m < n; ++m) {
          v -= A.dgamma[static_cast<size_t>(k)][static_cast<size_t>(m)](i, j) * b(m);
          v -= A.gamma[static_cast<size_t>(m)](i, j) * db_raw(m, k);
          v -= A.gamma[static_cast<size_t>(m)](i, k) * B.db(m, j);
          v -= A.gamma[static_cast<size_t>(m)](j, k) * B.db(i, m);
        }
        B.ddb[static_cast<size_t>(k)](i, j) = v;
      }

  // Symmetric/antisymmetric split and the derived tensors.
  B.rij = 0.5 * (B.db + B.db.transpose());
  B.sij = 0.5 * (B.db - B.db.transpose());
  B.r_up = A.a_inv * B.rij;
  B.s_up = A.a_inv * B.sij;
  B.ri = B.rij.transpose() * B.b_up;
  B.si = B.sij.transpose() * B.b_up;
  B.su = A.a_inv * B.si;
  B.eij = B.rij + B.si * B.b_lo.transpose() + B.b_lo * B.si.transpose();
  B.wij = B.rij * B.r_up;
  B.tij = B.sij * B.s_up;
  B.qij = B.rij * B.s_up;
  B.ti = B.tij.transpose() * B.b_up;
  B.qi = B.qij.transpose() * B.b_up;
  B.pi = B.rij * B.su;
  B.r = B.b_up.dot(B.rij * B.b_up);
  B.t = B.b_up.dot(B.ti);
  B.rmm = B.r_up.trace();
  B.tmm = (A.a_inv * B.tij).trace();
  B.qmm = (A.a_inv * B.qij).trace();

  // Covariant derivatives of r_ij, s_ij, and of the covector s_i.
  B.drij.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  B.dsij.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k) {
    B.drij[static_cast<size_t>(k)] =
        0.5 * (B.ddb[static_cast<size_t>(k)] +
               B.ddb[static_cast<size_t>(k)].transpose());
    B.dsij[static_cast<size_t>(k)] =
        0.5 * (B.ddb[static_cast<size_t>(k)] -
               B.ddb[static_cast<size_t>(k)].transpose());
  }
  // s_{i;k} = (b^m)_{;k} s_{mi} + b^m s_{mi;k}, with (b^m)_{;k} = a^{mh} b_{h;k}.
  const Eigen::MatrixXd db_up = A.a_inv * B.db;  // db_up(m,k) = (b^m)_{;k}
  B.dsi.setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int m = 0; m < n; ++m)
        v += db_up(m, k) * B.sij(m, i) +
             B.b_up(m) * B.dsij[static_cast<size_t>(k)](m, i);
      B.dsi(i, k) = v;
    }
  B.smm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) B.smm += A.a_inv(i, k) * B.dsi(i, k);
  B.bsimm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (int h = 0; h < n; ++h)
        B.bsimm += B.b_up(i) * A.a_inv(m, h) *
                   B.dsij[static_cast<size_t>(m)](h, i);
  return B;
}

}  // namespace rlab
