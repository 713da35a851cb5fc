#pragma once

// Closed-form curvature quantities of a Randers metric F = alpha + beta,
// expressed through the covariant zoo of beta and the Riemannian data of
// alpha.  Every routine here has a definitional counterpart (jet-based, in
// oracle.hpp, or assembled below) against which it is validated.

#include <Eigen/Dense>
#include <span>

#include "rlab/alpha.hpp"
#include "rlab/beta.hpp"
#include "rlab/jet.hpp"
#include "rlab/metric.hpp"

namespace rlab {

// Fundamental tensor g_ij = (F/alpha)(a_ij - Y_i Y_j / alpha^2) + l_i l_j
// with Y = a y and l = b + Y/alpha, and its closed-form inverse
//   g^{ij} = (alpha/F) a^{ij} - (alpha/F^2)(b^i y^j + b^j y^i)
//            + ((b^2 alpha + beta)/F^3) y^i y^j.
Eigen::MatrixXd metric_closed(const AlphaData& A, const BetaData& B,
                              std::span<const double> y);
Eigen::MatrixXd inverse_metric_closed(const AlphaData& A, const BetaData& B,
                                      std::span<const double> y);

// Ricci curvature in closed form,
//   Ric = Ric_alpha(y,y) + 2 alpha s^m_{0;m} - 2 t_00 - alpha^2 t^m_m
//         + (n-1) (Xi1 + Xi2 + Xi3)
// where
//   Xi1 = (2 alpha / F) (q_00 - alpha t_0)
//   Xi2 = (3 / (4 F^2)) (r_00 - 2 alpha s_0)^2
//   Xi3 = -(1 / (2 F)) (r_{00;0} - 2 alpha s_{0;0}).
// Templated on the scalar so y may carry jets.
template <class T>
struct XiPartsT {
  T xi1{0.0}, xi2{0.0}, xi3{0.0};
};
using XiParts = XiPartsT<double>;

template <class T>
XiPartsT<T> xi_parts_t(const ZooT<T>& z) {
  const T F = z.alpha + z.beta;
  XiPartsT<T> p;
  p.xi1 = (2.0 * z.alpha / F) * (z.q00 - z.alpha * z.t0);
  const T d = z.r00 - 2.0 * z.alpha * z.s0;
  p.xi2 = (3.0 / (4.0 * F * F)) * (d * d);
  p.xi3 = (-1.0 / (2.0 * F)) * (z.r000c - 2.0 * z.alpha * z.s00c);
  return p;
}

template <class T>
T ricci_closed_t(int n, double tmm, const ZooT<T>& z) {
  const XiPartsT<T> p = xi_parts_t(z);
  return z.ric00a + 2.0 * z.alpha * z.sm0m - 2.0 * z.t00 - z.alpha2 * tmm +
         static_cast<double>(n - 1) * (p.xi1 + p.xi2 + p.xi3);
}

double ricci_closed(const AlphaData& A, const BetaData& B,
                    std::span<const double> y);
XiParts xi_parts(const AlphaData& A, const BetaData& B,
                 std::span<const double> y);

// Ric_ij = [Ric]_{y^i y^j} / 2 from the closed-form Ricci via y-jets, and the
// scalar curvature r = g^{ij} Ric_ij obtained by contracting it with the
// closed-form inverse metric.  "Semi-closed": tensors enter in closed form,
// the two y-derivatives are taken by automatic differentiation.
Eigen::MatrixXd ricci_tensor_semi(const AlphaData& A, const BetaData& B,
                                  std::span<const double> y);
double scalar_curvature_semi(const AlphaData& A, const BetaData& B,
                             std::span<const double> y);

// Busemann-Hausdorff volume form sigma(x) and the S-curvature.
//   sigma_bh = (1 - b^2)^{(n+1)/2} sigma_alpha
//   d_k log sigma_bh = -(n+1)(r_k + s_k)/(1 - b^2) + Gamma^m_{mk}
//   S = (n+1) [ e_00 / (2F) - (s_0 + rho_0) ],  rho_k = -(r_k + s_k)/(1 - b^2)
double sigma_bh_closed(const AlphaData& A, const BetaData& B);
Eigen::VectorXd dlog_sigma_bh(const AlphaData& A, const BetaData& B);
double s_curvature_closed(const AlphaData& A, const BetaData& B,
                          std::span<const double> y);

// Definitional S-curvature: S = dG^m/dy^m - y^m d_m log sigma_bh, with the
// spray divergence taken from jets of F^2 alone.
double s_curvature_def(const MetricDefinition& def, std::span<const double> x,
                       std::span<const double> y);

// Distortion tau = log( sqrt(det g) / sigma_bh ).  Uses the determinant
// identity det g = (F/alpha)^{n+1} det a, which is itself under test.
double distortion_closed(const AlphaData& A, const BetaData& B,
                         std::span<const double> y);

// Mean Cartan torsion.  Definitional route: I_i = g^{jk} C_ijk with
// C_ijk = [F^2]_{y^i y^j y^k} / 4 from order-3 y-jets (equivalently
// I_i = tau_{y^i}).  Closed form: I_i = ((n+1)/(2F)) (b_i - beta Y_i/alpha^2).
Eigen::VectorXd mean_cartan_def(const AlphaData& A, const BetaData& B,
                                std::span<const double> y);
Eigen::VectorXd mean_cartan_closed(const AlphaData& A, const BetaData& B,
                                   std::span<const double> y);

// Rate of change of the distortion along the geodesic through (x, y),
// computed by RK4 integration of xdot = y, ydot = -2G(x,y) and a fourth-order
// finite-difference stencil in t.  Equals the S-curvature at (x, y).
double s_curvature_geodesic(const MetricDefinition& def,
                            std::span<const double> x,
                            std::span<const double> y, double h = 1e-2);

}  // namespace rlab
