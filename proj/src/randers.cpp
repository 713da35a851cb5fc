#include "rlab/randers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rlab/oracle.hpp"

namespace rlab {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v) {
  return {v.data(), static_cast<long>(v.size())};
}

}  // namespace

Eigen::MatrixXd metric_closed(const AlphaData& A, const BetaData& B,
                              std::span<const double> y) {
  const auto yv = as_vec(y);
  const Eigen::VectorXd Y = A.a * yv;  // Y_i = a_ij y^j
  const double alpha = std::sqrt(yv.dot(Y));
  const double F = alpha + B.b_lo.dot(yv);
  const Eigen::VectorXd l = B.b_lo + Y / alpha;  // l_i = F_{y^i}
  return (F / alpha) * (A.a - (Y / alpha) * (Y / alpha).transpose()) +
         l * l.transpose();
}

Eigen::MatrixXd inverse_metric_closed(const AlphaData& A, const BetaData& B,
                                      std::span<const double> y) {
  const auto yv = as_vec(y);
  const double alpha = std::sqrt(yv.dot(A.a * yv));
  const double beta = B.b_lo.dot(yv);
  const double F = alpha + beta;
  return (alpha / F) * A.a_inv -
         (alpha / (F * F)) *
             (B.b_up * yv.transpose() + yv * B.b_up.transpose()) +
         ((B.b2 * alpha + beta) / (F * F * F)) * (yv * yv.transpose());
}

double ricci_closed(const AlphaData& A, const BetaData& B,
                    std::span<const double> y) {
  const ZooAtY z = contract_zoo(A, B, y);
  return ricci_closed_t<double>(B.n, B.tmm, z);
}

XiParts xi_parts(const AlphaData& A, const BetaData& B,
                 std::span<const double> y) {
  const ZooAtY z = contract_zoo(A, B, y);
  return xi_parts_t<double>(z);
}

Eigen::MatrixXd ricci_tensor_semi(const AlphaData& A, const BetaData& B,
                                  std::span<const double> y) {
  const int n = B.n;
  auto layout = JetLayout::get(n, 2);
  const std::vector<Jet> yj = seed_jets<double>(layout, y);
  const ZooT<Jet> z = contract_zoo_t<Jet>(A, B, std::span<const Jet>(yj));
  const Jet ric = ricci_closed_t<Jet>(n, B.tmm, z);
  Eigen::MatrixXd out(n, n);
  std::vector<int> mi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::fill(mi.begin(), mi.end(), 0);
      mi[static_cast<size_t>(i)] += 1;
      mi[static_cast<size_t>(j)] += 1;
      const double v = 0.5 * ric.partial(mi);
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

double scalar_curvature_semi(const AlphaData& A, const BetaData& B,
                             std::span<const double> y) {
  return (inverse_metric_closed(A, B, y) * ricci_tensor_semi(A, B, y)).trace();
}

double sigma_bh_closed(const AlphaData& A, const BetaData& B) {
  return std::pow(1.0 - B.b2, 0.5 * (B.n + 1)) * A.sigma_alpha;
}

Eigen::VectorXd dlog_sigma_bh(const AlphaData& A, const BetaData& B) {
  const int n = B.n;
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) {
    double trg = 0.0;  // Gamma^m_{mk} = d_k log sigma_alpha
    for (int m = 0; m < n; ++m) trg += A.gamma[static_cast<size_t>(m)](m, k);
    out(k) = -(n + 1) * (B.ri(k) + B.si(k)) / (1.0 - B.b2) + trg;
  }
  return out;
}

double s_curvature_closed(const AlphaData& A, const BetaData& B,
                          std::span<const double> y) {
  const auto yv = as_vec(y);
  const double alpha = std::sqrt(yv.dot(A.a * yv));
  const double beta = B.b_lo.dot(yv);
  const double F = alpha + beta;
  const double e00 = yv.dot(B.eij * yv);
  const double s0 = B.si.dot(yv);
  const double rho0 = -(B.ri.dot(yv) + s0) / (1.0 - B.b2);
  return (B.n + 1) * (e00 / (2.0 * F) - (s0 + rho0));
}

double s_curvature_def(const MetricDefinition& def, std::span<const double> x,
                       std::span<const double> y) {
  const AlphaData A = alpha_data(def, x);
  const BetaData B = beta_data(def, A, x);
  const auto yv = as_vec(y);
  return spray_ydiv_def(def, x, y) - yv.dot(dlog_sigma_bh(A, B));
}

double distortion_closed(const AlphaData& A, const BetaData& B,
                         std::span<const double> y) {
  const auto yv = as_vec(y);
  const double alpha = std::sqrt(yv.dot(A.a * yv));
  const double F = alpha + B.b_lo.dot(yv);
  return 0.5 * (B.n + 1) * (std::log(F / alpha) - std::log(1.0 - B.b2));
}

Eigen::VectorXd mean_cartan_def(const AlphaData& A, const BetaData& B,
                                std::span<const double> y) {
  const int n = B.n;
  auto layout = JetLayout::get(n, 3);
  const std::vector<Jet> yj = seed_jets<double>(layout, y);

  Jet ayy(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Jet term =
          A.a(i, j) * yj[static_cast<size_t>(i)] * yj[static_cast<size_t>(j)];
      ayy += (i == j) ? term : 2.0 * term;
    }
  Jet bet(0.0);
  for (int i = 0; i < n; ++i) bet += B.b_lo(i) * yj[static_cast<size_t>(i)];
  const Jet alpha = sqrt(ayy);
  const Jet fsq = ayy + 2.0 * alpha * bet + bet * bet;

  Eigen::MatrixXd g(n, n);
  std::vector<int> mi(static_cast<size_t>(n));
  auto order3 = [&](int i, int j, int k) {
    std::fill(mi.begin(), mi.end(), 0);
    mi[static_cast<size_t>(i)] += 1;
    mi[static_cast<size_t>(j)] += 1;
    mi[static_cast<size_t>(k)] += 1;
    return fsq.partial(mi);
  };
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      std::fill(mi.begin(), mi.end(), 0);
      mi[static_cast<size_t>(j)] += 1;
      mi[static_cast<size_t>(k)] += 1;
      g(j, k) = 0.5 * fsq.partial(mi);
      g(k, j) = g(j, k);
    }
  const Eigen::MatrixXd g_inv = g.inverse();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out(i) += g_inv(j, k) * 0.25 * order3(i, j, k);
  return out;
}

Eigen::VectorXd mean_cartan_closed(const AlphaData& A, const BetaData& B,
                                   std::span<const double> y) {
  const auto yv = as_vec(y);
  const Eigen::VectorXd Y = A.a * yv;
  const double alpha2 = yv.dot(Y);
  const double alpha = std::sqrt(alpha2);
  const double beta = B.b_lo.dot(yv);
  const double F = alpha + beta;
  return ((B.n + 1) / (2.0 * F)) * (B.b_lo - (beta / alpha2) * Y);
}

namespace {

// Distortion evaluated from scratch at arbitrary (x, y): only a(x), b(x) and
// b^2 are needed.
double distortion_at(const MetricDefinition& def, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y) {
  const std::span<const double> xs(x.data(), static_cast<size_t>(x.size()));
  const Eigen::MatrixXd a = def.alpha_matrix<double>(xs);
  const Eigen::VectorXd b = def.beta_covector<double>(xs);
  const double b2 = b.dot(a.ldlt().solve(b));
  const double alpha = std::sqrt(y.dot(a * y));
  const double F = alpha + b.dot(y);
  return 0.5 * (def.dim + 1) * (std::log(F / alpha) - std::log(1.0 - b2));
}

struct FlowState {
  Eigen::VectorXd x, y;
};

FlowState geodesic_rhs(const MetricDefinition& def, const FlowState& s) {
  const std::span<const double> xs(s.x.data(), static_cast<size_t>(s.x.size()));
  const std::span<const double> ys(s.y.data(), static_cast<size_t>(s.y.size()));
  return {s.y, -2.0 * spray_def(def, xs, ys)};
}

FlowState rk4_step(const MetricDefinition& def, const FlowState& s, double h) {
  const FlowState k1 = geodesic_rhs(def, s);
  const FlowState k2 =
      geodesic_rhs(def, {s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y});
  const FlowState k3 =
      geodesic_rhs(def, {s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y});
  const FlowState k4 = geodesic_rhs(def, {s.x + h * k3.x, s.y + h * k3.y});
  return {s.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

}  // namespace

double s_curvature_geodesic(const MetricDefinition& def,
                            std::span<const double> x,
                            std::span<const double> y, double h) {
  FlowState s0;
  s0.x = as_vec(x);
  s0.y = as_vec(y);
  // tau at t = -2h, -h, +h, +2h along the geodesic through (x, y).
  double tau[4];
  const double steps[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int q = 0; q < 4; ++q) {
    FlowState s = s0;
    const int nstep = static_cast<int>(std::abs(steps[q]));
    const double hh = h * (steps[q] > 0 ? 1.0 : -1.0);
    for (int k = 0; k < nstep; ++k) s = rk4_step(def, s, hh);
    tau[q] = distortion_at(def, s.x, s.y);
  }
  return (tau[0] - 8.0 * tau[1] + 8.0 * tau[2] - tau[3]) / (12.0 * h);
}

}  // namespace rlab
