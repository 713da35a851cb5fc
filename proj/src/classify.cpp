#include "rlab/classify.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "rlab/alpha.hpp"
#include "rlab/beta.hpp"
#include "rlab/jet.hpp"
#include "rlab/randers.hpp"
#include "rlab/util.hpp"

namespace rlab {
namespace {

// Design-matrix least squares shared by the two sphere fits: model
// value(i) = sum_j design(i, j) coeff(j), residual relative to the data
// 2-norm with the documented floor.
struct FitSolution {
  Eigen::VectorXd coeff;
  double residual = 0.0;
};

FitSolution solve_fit(const Eigen::MatrixXd& design,
                      const Eigen::VectorXd& data, const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    std::ostringstream msg;
    msg << what << ": design matrix is rank deficient (rank " << qr.rank()
        << " of " << design.cols() << "); use more sample directions";
    throw ClassifyError(msg.str());
  }
  FitSolution s;
  s.coeff = qr.solve(data);
  s.residual = (design * s.coeff - data).norm() / std::max(data.norm(), 1e-12);
  return s;
}

int clamp_samples(const SphereFitOptions& opt, int n) {
  return std::max(opt.samples, 3 * (n + 1));
}

double alpha_of(const AlphaData& A, const Eigen::VectorXd& y) {
  return std::sqrt(y.dot(A.a * y));
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

Decision decide(double residual, double hold_tol, double fail_tol) {
  Decision d;
  d.residual = residual;
  d.hold_tol = hold_tol;
  d.fail_tol = fail_tol;
  if (residual < hold_tol)
    d.verdict = Verdict::kHolds;
  else if (residual > fail_tol)
    d.verdict = Verdict::kFails;
  else
    d.verdict = Verdict::kInconclusive;
  return d;
}

IsotropicSResult test_isotropic_s(const MetricDefinition& def,
                                  std::span<const double> x, double hold_tol,
                                  double fail_tol) {
  const int n = def.dim;
  const AlphaData A = alpha_data(def, x);
  const BetaData B = beta_data(def, A, x);
  const Eigen::MatrixXd h = A.a - B.b_lo * B.b_lo.transpose();

  IsotropicSResult out;
  // Trace fit: if e = 2 c h exactly then tr(h^{-1} e) = 2 c n.
  out.c = (h.ldlt().solve(B.eij)).trace() / (2.0 * n);
  out.c_alt = out.c * (n + 1.0) / (n - 1.0);
  const double defect = (B.eij - 2.0 * out.c * h).cwiseAbs().maxCoeff();
  const double scale = h.cwiseAbs().maxCoeff();
  out.decision = decide(defect / scale, hold_tol, fail_tol);
  return out;
}

WeakIsotropyFit fit_weakly_isotropic_r(const MetricDefinition& def,
                                       std::span<const double> x,
                                       const SphereFitOptions& opt) {
  const int n = def.dim;
  const AlphaData A = alpha_data(def, x);
  const BetaData B = beta_data(def, A, x);
  const int m = clamp_samples(opt, n);
  const std::vector<Eigen::VectorXd> dirs = sphere_directions(n, m, opt.seed);

  // r(x, y) = n(n-1) [ theta_i y^i / F + mu ]; unknowns (theta, mu).
  Eigen::MatrixXd design(m, n + 1);
  Eigen::VectorXd data(m);
  const double scale = n * (n - 1.0);
  parallel_for(m, [&](int i) {
    const Eigen::VectorXd& y = dirs[static_cast<std::size_t>(i)];
    const double f = alpha_of(A, y) + B.b_lo.dot(y);
    for (int j = 0; j < n; ++j) design(i, j) = scale * y(j) / f;
    design(i, n) = scale;
    data(i) = scalar_curvature_semi(
        A, B, std::span<const double>(y.data(), static_cast<std::size_t>(n)));
  });

  const FitSolution s = solve_fit(design, data, "fit_weakly_isotropic_r");
  WeakIsotropyFit out;
  out.theta = s.coeff.head(n);
  out.mu = s.coeff(n);
  out.samples = m;
  out.decision = decide(s.residual, opt.hold_tol, opt.fail_tol);
  return out;
}

WeakEinsteinFit fit_weak_einstein(const MetricDefinition& def,
                                  std::span<const double> x,
                                  const SphereFitOptions& opt) {
  const int n = def.dim;
  const AlphaData A = alpha_data(def, x);
  const BetaData B = beta_data(def, A, x);
  const int m = clamp_samples(opt, n);
  const std::vector<Eigen::VectorXd> dirs = sphere_directions(n, m, opt.seed);

  // Ric(x, y) = (n-1) [ 3 xi_i y^i / F + mu ] F^2; unknowns (xi, mu).
  Eigen::MatrixXd design(m, n + 1);
  Eigen::VectorXd data(m);
  parallel_for(m, [&](int i) {
    const Eigen::VectorXd& y = dirs[static_cast<std::size_t>(i)];
    const double f = alpha_of(A, y) + B.b_lo.dot(y);
    for (int j = 0; j < n; ++j) design(i, j) = (n - 1.0) * 3.0 * y(j) * f;
    design(i, n) = (n - 1.0) * f * f;
    data(i) = ricci_closed(
        A, B, std::span<const double>(y.data(), static_cast<std::size_t>(n)));
  });

  const FitSolution s = solve_fit(design, data, "fit_weak_einstein");
  WeakEinsteinFit out;
  out.xi = s.coeff.head(n);
  out.mu = s.coeff(n);
  out.samples = m;
  out.decision = decide(s.residual, opt.hold_tol, opt.fail_tol);
  return out;
}

ThetaXiReport check_theta_xi_relation(const MetricDefinition& def,
                                      std::span<const double> x,
                                      const SphereFitOptions& opt, double tol) {
  const int n = def.dim;
  ThetaXiReport out;
  out.isotropy = fit_weakly_isotropic_r(def, x, opt);
  out.einstein = fit_weak_einstein(def, x, opt);
  out.tol = tol;
  const double ratio = 3.0 * (n + 1.0) / (2.0 * n);
  out.max_abs_diff =
      (out.isotropy.theta - ratio * out.einstein.xi).cwiseAbs().maxCoeff();
  const bool both_hold = out.isotropy.decision.verdict == Verdict::kHolds &&
                         out.einstein.decision.verdict == Verdict::kHolds;
  out.consistent =
      both_hold &&
      out.max_abs_diff < tol * (1.0 + out.isotropy.theta.cwiseAbs().maxCoeff());
  return out;
}

ConformalSpec conformal_scale(const MetricDefinition& def,
                              const std::string& sigma_text) {
  ConformalSpec spec;
  spec.base = def;
  spec.sigma = parse_expression(sigma_text, def.dim, def.param_names);

  const ExprPtr e_sigma = expr_call(FuncKind::kExp, spec.sigma);
  const ExprPtr e_two_sigma = expr_call(
      FuncKind::kExp,
      expr_binary(ExprNode::Kind::kMul, expr_number(2.0), spec.sigma));

  spec.scaled = def;
  for (ExprPtr& entry : spec.scaled.a)
    entry = expr_binary(ExprNode::Kind::kMul, e_two_sigma, entry);
  for (ExprPtr& entry : spec.scaled.b)
    entry = expr_binary(ExprNode::Kind::kMul, e_sigma, entry);
  spec.scaled.source = def.source + "+conformal";

  // Construction tripwire at a few probe points (skipping any outside the
  // base metric's domain): ||beta||_alpha is invariant and F scales by
  // exp(sigma).  A violation is a bug in the rewrite, never in the input.
  const int n = def.dim;
  for (int probe = 0; probe < 3; ++probe) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] =
          0.08 * probe * std::sin(1.7 * j + 0.9 * probe + 0.3);
      y[static_cast<std::size_t>(j)] = std::cos(2.3 * j + 1.1 * probe) + 0.2;
    }
    try {
      const AlphaData a0 = alpha_data(spec.base, x);
      const BetaData b0 = beta_data(spec.base, a0, x);
      const AlphaData a1 = alpha_data(spec.scaled, x);
      const BetaData b1 = beta_data(spec.scaled, a1, x);
      if (std::abs(b1.b2 - b0.b2) > 1e-12 * (1.0 + std::abs(b0.b2)))
        throw std::logic_error(
            "conformal_scale: ||beta||_alpha changed under scaling");
      const double s = eval<double>(*spec.sigma, x, def.param_values);
      const double f0 = finsler_norm(spec.base, x, y);
      const double f1 = finsler_norm(spec.scaled, x, y);
      if (std::abs(f1 - std::exp(s) * f0) > 1e-12 * (1.0 + std::abs(f1)))
        throw std::logic_error(
            "conformal_scale: F does not scale by exp(sigma)");
    } catch (const MetricDomainError&) {
    } catch (const EvalDomainError&) {
    }
  }
  return spec;
}

ConformalSReport check_conformal_s_shift(const ConformalSpec& spec,
                                         std::span<const double> x,
                                         std::span<const double> y,
                                         double tol) {
  const int n = spec.base.dim;
  const AlphaData A = alpha_data(spec.base, x);
  const BetaData B = beta_data(spec.base, A, x);
  const double f = std::sqrt(Eigen::Map<const Eigen::VectorXd>(y.data(), n)
                                 .dot(A.a * Eigen::Map<const Eigen::VectorXd>(
                                                 y.data(), n))) +
                   B.b_lo.dot(Eigen::Map<const Eigen::VectorXd>(y.data(), n));

  // Gradient of sigma at x from order-1 coordinate jets.
  const auto layout = JetLayout::get(n, 1);
  std::vector<Jet> seeds = seed_jets<double>(layout, x);
  const Jet sj = eval<Jet>(*spec.sigma, std::span<const Jet>(seeds),
                           std::span<const double>(spec.base.param_values));
  Eigen::VectorXd dsigma(n);
  std::vector<int> mi(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    std::fill(mi.begin(), mi.end(), 0);
    mi[static_cast<std::size_t>(k)] = 1;
    dsigma(k) = sj.partial(mi);
  }

  const Eigen::MatrixXd g_inv = inverse_metric_closed(A, B, y);
  const Eigen::VectorXd cartan = mean_cartan_closed(A, B, y);

  ConformalSReport out;
  out.s_scaled = s_curvature_def(spec.scaled, x, y);
  out.s_shifted =
      s_curvature_closed(A, B, y) + f * f * (g_inv * dsigma).dot(cartan);
  out.rel_err = std::abs(out.s_scaled - out.s_shifted) / (1.0 + f);
  out.holds = out.rel_err < tol;
  return out;
}

ImplicationReport isotropy_implication(const MetricDefinition& def,
                                       std::span<const double> x,
                                       const SphereFitOptions& opt) {
  ImplicationReport out;
  out.isotropy = fit_weakly_isotropic_r(def, x, opt);
  out.isotropic_s = test_isotropic_s(def, x, opt.hold_tol, opt.fail_tol);
  out.antecedent = out.isotropy.decision.verdict == Verdict::kHolds;
  const bool consequent_fails =
      out.isotropic_s.decision.verdict == Verdict::kFails;
  out.counterexample = out.antecedent && consequent_fails;

  std::ostringstream msg;
  if (!out.antecedent) {
    msg << "vacuous: scalar curvature is not weakly isotropic here "
        << "(fit residual " << out.isotropy.decision.residual << ")";
  } else if (out.counterexample) {
    msg << "counterexample: weakly isotropic r (residual "
        << out.isotropy.decision.residual << ") but S-curvature defect "
        << out.isotropic_s.decision.residual << " exceeds "
        << out.isotropic_s.decision.fail_tol;
  } else {
    msg << "implication holds: weakly isotropic r and isotropic S with c = "
        << out.isotropic_s.c;
  }
  out.summary = msg.str();
  return out;
}

}  // namespace rlab
