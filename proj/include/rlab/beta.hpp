#pragma once

// The covariant "zoo" of the one-form b_i dx^i: first and second covariant
// derivatives split into symmetric/antisymmetric parts, the standard derived
// tensors, and every trace or b-contraction that the closed-form curvature
// expressions consume.  Conventions:
//
//   r_ij = (b_{i;j} + b_{j;i})/2          s_ij = (b_{i;j} - b_{j;i})/2
//   e_ij = r_ij + s_i b_j + s_j b_i
//   w_ij = r_im r^m_j    t_ij = s_im s^m_j    q_ij = r_im s^m_j
//   r_i  = b^m r_mi      s_i  = b^m s_mi      t_i  = b^m t_mi
//   q_i  = b^m q_mi      p_i  = r_im s^m      s^m  = a^{mi} s_i
//   r    = b^i b^j r_ij  t    = b^i t_i
//
// with ";" the covariant derivative of a and indices raised by a^{ij}.

#include <Eigen/Dense>
#include <vector>

#include "rlab/alpha.hpp"

namespace rlab {

struct BetaData {
  int n = 0;
  double b2 = 0.0;
  Eigen::VectorXd b_lo, b_up;        // b_i, b^i
  Eigen::MatrixXd db;                // db(i,j)     = b_{i;j}
  std::vector<Eigen::MatrixXd> ddb;  // ddb[k](i,j) = b_{i;j;k}

  Eigen::MatrixXd rij, sij, eij, wij, tij, qij;
  Eigen::MatrixXd r_up, s_up;        // r^i_j, s^i_j
  Eigen::VectorXd ri, si, ti, qi, pi;
  Eigen::VectorXd su;                // s^i
  double r = 0.0, t = 0.0;
  double rmm = 0.0, tmm = 0.0, qmm = 0.0;  // r^m_m, t^m_m, q^m_m
  double smm = 0.0;                  // s^m_{;m}  (divergence of the covector s_i)
  double bsimm = 0.0;                // b^i s^m_{i;m}

  std::vector<Eigen::MatrixXd> drij, dsij;  // drij[k](i,j) = r_{ij;k}
  Eigen::MatrixXd dsi;               // dsi(i,j) = s_{i;j} (covector s_i)
};

BetaData beta_data(const MetricDefinition& def, const AlphaData& A,
                   std::span<const double> x);

// Scalar contractions of the zoo against a fixed tangent vector y; "0"
// denotes a y-slot, ";" a covariant derivative slot.  Templated on the
// scalar so y can carry jets (for y-derivatives of closed-form quantities).
template <class T>
struct ZooT {
  T alpha2{0.0}, alpha{0.0}, beta{0.0};
  T r00{0.0}, e00{0.0}, q00{0.0}, w00{0.0}, t00{0.0};
  T s0{0.0}, r0{0.0}, t0{0.0}, q0{0.0}, p0{0.0};
  T s00c{0.0};                   // s_{0;0}
  T r000c{0.0}, e000c{0.0};      // r_{00;0}, e_{00;0}
  T sm0m{0.0};                   // s^m_{0;m}
  T rmm0{0.0}, r0mm{0.0};        // r^m_{m;0}, r^m_{0;m}
  T q00ib{0.0};                  // (q_ij + q_ji) y^j b^i
  T r000ib{0.0};                 // (2 r_{lj;k} + r_{jk;l}) y^j y^k b^l
  T s00ib{0.0};                  // (s_{l;j} + s_{j;l}) y^j b^l
  T ric00a{0.0}, ricb0a{0.0};    // Ric_{ij} y^i y^j, Ric_{ij} b^i y^j
};

using ZooAtY = ZooT<double>;

template <class T>
ZooT<T> contract_zoo_t(const AlphaData& A, const BetaData& B,
                       std::span<const T> y) {
  using std::sqrt;
  const int n = B.n;
  ZooT<T> z;
  for (int i = 0; i < n; ++i) {
    const T& yi = y[static_cast<size_t>(i)];
    z.beta += B.b_lo(i) * yi;
    z.s0 += B.si(i) * yi;
    z.r0 += B.ri(i) * yi;
    z.t0 += B.ti(i) * yi;
    z.q0 += B.qi(i) * yi;
    z.p0 += B.pi(i) * yi;
    for (int j = 0; j < n; ++j) {
      const T yij = yi * y[static_cast<size_t>(j)];
      z.alpha2 += A.a(i, j) * yij;
      z.r00 += B.rij(i, j) * yij;
      z.e00 += B.eij(i, j) * yij;
      z.q00 += B.qij(i, j) * yij;
      z.w00 += B.wij(i, j) * yij;
      z.t00 += B.tij(i, j) * yij;
      z.s00c += B.dsi(i, j) * yij;
      z.ric00a += A.ricci(i, j) * yij;
      z.q00ib += (B.qij(i, j) + B.qij(j, i)) * y[static_cast<size_t>(j)] *
                 B.b_up(i);
      z.s00ib += (B.dsi(i, j) + B.dsi(j, i)) * y[static_cast<size_t>(j)] *
                 B.b_up(i);
      z.ricb0a += A.ricci(i, j) * B.b_up(i) * y[static_cast<size_t>(j)];
    }
  }
  z.alpha = sqrt(z.alpha2);
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXd& Dr = B.drij[static_cast<size_t>(k)];
    const T& yk = y[static_cast<size_t>(k)];
    T trDr{0.0};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const T yij = y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
        z.r000c += Dr(i, j) * yij * yk;
        // (2 r_{lj;k} + r_{jk;l}) y^j y^k b^l with (l,j,k) -> (i,j,k):
        z.r000ib += (2.0 * Dr(i, j) + B.drij[static_cast<size_t>(i)](j, k)) *
                    y[static_cast<size_t>(j)] * yk * B.b_up(i);
        trDr += A.a_inv(i, j) * Dr(i, j);
      }
    z.rmm0 += trDr * yk;
    // s^m_{0;m} = a^{mh} s_{h i;m} y^i and likewise r^m_{0;m}: the traced
    // index m sits in the derivative slot.
    for (int m = 0; m < n; ++m)
      for (int h = 0; h < n; ++h) {
        z.sm0m += A.a_inv(m, h) * B.dsij[static_cast<size_t>(m)](h, k) * yk;
        z.r0mm += A.a_inv(m, h) * B.drij[static_cast<size_t>(m)](h, k) * yk;
      }
  }
  z.e000c = z.r000c + 2.0 * z.beta * z.s00c + 2.0 * z.s0 * z.r00;
  return z;
}

inline ZooAtY contract_zoo(const AlphaData& A, const BetaData& B,
                           std::span<const double> y) {
  return contract_zoo_t<double>(A, B, y);
}

}  // namespace rlab
