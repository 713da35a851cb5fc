#include "rlab/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rlab/alpha.hpp"
#include "rlab/beta.hpp"

namespace rlab {
namespace {

void check_same_shape(const HomPoly& a, const HomPoly& b, const char* what) {
  if (a.n != b.n || a.d != b.d) {
    std::ostringstream msg;
    msg << what << ": shape mismatch, (" << a.n << ", deg " << a.d
        << ") vs (" << b.n << ", deg " << b.d << ")";
    throw PolyError(msg.str());
  }
}

double monomial_value(const MultiIndex& idx, std::span<const double> y) {
  double v = 1.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const int e = idx[j];
    for (int k = 0; k < e; ++k) v *= y[j];
  }
  return v;
}

}  // namespace

std::vector<MultiIndex> homogeneous_indices(int n, int d) {
  if (n < 1 || d < 0)
    throw PolyError("homogeneous_indices: need n >= 1 and d >= 0");
  std::vector<MultiIndex> out;
  MultiIndex idx(static_cast<std::size_t>(n), 0);
  const std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == n - 1) {
      idx[static_cast<std::size_t>(pos)] = left;
      out.push_back(idx);
      return;
    }
    for (int e = left; e >= 0; --e) {
      idx[static_cast<std::size_t>(pos)] = e;
      walk(pos + 1, left - e);
    }
  };
  walk(0, d);
  return out;
}

double HomPoly::eval(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n)
    throw PolyError("HomPoly::eval: wrong number of variables");
  double sum = 0.0;
  for (const auto& [idx, c] : coeff) sum += c * monomial_value(idx, y);
  return sum;
}

double HomPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [idx, c] : coeff) m = std::max(m, std::abs(c));
  return m;
}

HomPoly& HomPoly::add_scaled(const HomPoly& other, double scale) {
  check_same_shape(*this, other, "HomPoly::add_scaled");
  for (const auto& [idx, c] : other.coeff) coeff[idx] += scale * c;
  return *this;
}

HomPoly hompoly_product(const HomPoly& p, const HomPoly& q) {
  if (p.n != q.n) throw PolyError("hompoly_product: variable count mismatch");
  HomPoly out;
  out.n = p.n;
  out.d = p.d + q.d;
  for (const auto& [pi, pc] : p.coeff)
    for (const auto& [qi, qc] : q.coeff) {
      MultiIndex sum(pi.size());
      for (std::size_t j = 0; j < pi.size(); ++j) sum[j] = pi[j] + qi[j];
      out.coeff[sum] += pc * qc;
    }
  return out;
}

HomPoly quadratic_from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw PolyError("quadratic_from_matrix: matrix must be square");
  const int n = static_cast<int>(m.rows());
  HomPoly out;
  out.n = n;
  out.d = 2;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      MultiIndex idx(static_cast<std::size_t>(n), 0);
      idx[static_cast<std::size_t>(i)] += 1;
      idx[static_cast<std::size_t>(j)] += 1;
      const double c = (i == j) ? m(i, i) : (m(i, j) + m(j, i));
      if (c != 0.0) out.coeff[idx] = c;
    }
  return out;
}

HomPoly linear_from_vector(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  if (n < 1) throw PolyError("linear_from_vector: empty vector");
  HomPoly out;
  out.n = n;
  out.d = 1;
  for (int i = 0; i < n; ++i) {
    MultiIndex idx(static_cast<std::size_t>(n), 0);
    idx[static_cast<std::size_t>(i)] = 1;
    out.coeff[idx] = v(i);
  }
  return out;
}

HomPoly extract_hompoly(const std::function<double(std::span<const double>)>& f,
                        int n, int d, double hom_tol) {
  if (n < 1 || d < 0) throw PolyError("extract_hompoly: need n >= 1, d >= 0");

  // Homogeneity probe at scale 2 on two fixed, asymmetric points.  A
  // mismatch means the evaluator is not homogeneous of the stated degree
  // and interpolation on the grid below would silently produce garbage.
  const double pow2d = std::ldexp(1.0, d);
  for (int probe = 0; probe < 2; ++probe) {
    std::vector<double> u(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      u[static_cast<std::size_t>(j)] =
          (probe == 0) ? 0.6 + 0.3 * std::sin(2.7 * j + 1.0)
                       : -0.5 + 0.25 * std::cos(1.9 * j + 2.0);
    std::vector<double> u2(u);
    for (double& c : u2) c *= 2.0;
    const double f1 = f(u);
    const double f2 = f(u2);
    const double err = std::abs(f2 - pow2d * f1);
    const double scale = 1.0 + std::abs(f2) + pow2d * std::abs(f1);
    if (err > hom_tol * scale) {
      std::ostringstream msg;
      msg << "extract_hompoly: evaluator is not homogeneous of degree " << d
          << " (f(2u) = " << f2 << ", 2^d f(u) = " << pow2d * f1
          << ", relative mismatch " << err / scale << ")";
      throw PolyError(msg.str());
    }
  }

  const std::vector<MultiIndex> indices = homogeneous_indices(n, d);
  const int unknowns = static_cast<int>(indices.size());

  if (d == 0) {
    HomPoly out;
    out.n = n;
    out.d = 0;
    const std::vector<double> origin(static_cast<std::size_t>(n), 1.0);
    out.coeff[MultiIndex(static_cast<std::size_t>(n), 0)] = f(origin);
    return out;
  }

  // Candidate grid: integer points in {-d..d}^n, lexicographic, origin
  // skipped.  Rows are monomial values; a greedy modified Gram-Schmidt
  // sweep keeps the points whose (normalized) rows stay well away from the
  // span of the rows already chosen, relaxing the angle threshold only if
  // a pass comes up short.
  const int side = 2 * d + 1;
  long total = 1;
  for (int j = 0; j < n; ++j) total *= side;

  std::vector<std::vector<double>> chosen_points;
  std::vector<Eigen::VectorXd> basis;  // orthonormalized accepted rows
  chosen_points.reserve(static_cast<std::size_t>(unknowns));
  basis.reserve(static_cast<std::size_t>(unknowns));

  for (const double threshold : {0.5, 0.25, 0.05, 1e-3, 1e-9}) {
    for (long flat = 0;
         flat < total && static_cast<int>(chosen_points.size()) < unknowns;
         ++flat) {
      std::vector<double> pt(static_cast<std::size_t>(n));
      long rem = flat;
      bool origin = true;
      for (int j = n - 1; j >= 0; --j) {
        const int e = static_cast<int>(rem % side) - d;
        rem /= side;
        pt[static_cast<std::size_t>(j)] = e;
        if (e != 0) origin = false;
      }
      if (origin) continue;
      Eigen::VectorXd row(unknowns);
      for (int k = 0; k < unknowns; ++k)
        row(k) = monomial_value(indices[static_cast<std::size_t>(k)], pt);
      const double norm = row.norm();
      if (norm <= 0.0) continue;
      row /= norm;
      for (const Eigen::VectorXd& b : basis) row -= b.dot(row) * b;
      const double res = row.norm();
      if (res > threshold) {
        basis.push_back(row / res);
        chosen_points.push_back(pt);
      }
    }
    if (static_cast<int>(chosen_points.size()) == unknowns) break;
  }
  if (static_cast<int>(chosen_points.size()) < unknowns)
    throw PolyError("extract_hompoly: could not assemble a full-rank grid");

  Eigen::MatrixXd m(unknowns, unknowns);
  Eigen::VectorXd rhs(unknowns);
  for (int i = 0; i < unknowns; ++i) {
    const std::vector<double>& pt = chosen_points[static_cast<std::size_t>(i)];
    for (int k = 0; k < unknowns; ++k)
      m(i, k) = monomial_value(indices[static_cast<std::size_t>(k)], pt);
    rhs(i) = f(pt);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
  const double cond =
      diag.minCoeff() > 0.0
          ? diag.maxCoeff() / diag.minCoeff()
          : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    std::ostringstream msg;
    msg << "extract_hompoly: interpolation system is ill-conditioned "
           "(condition estimate "
        << cond << ")";
    throw PolyError(msg.str());
  }
  const Eigen::VectorXd c = qr.solve(rhs);

  HomPoly out;
  out.n = n;
  out.d = d;
  for (int k = 0; k < unknowns; ++k)
    out.coeff[indices[static_cast<std::size_t>(k)]] = c(k);
  return out;
}

DivisionResult divide_by_quadratic(const HomPoly& p, const HomPoly& q,
                                   double tol) {
  if (p.n != q.n)
    throw PolyError("divide_by_quadratic: variable count mismatch");
  if (q.d != 2) throw PolyError("divide_by_quadratic: divisor must be quadratic");
  if (p.d < 2)
    throw PolyError("divide_by_quadratic: dividend degree below divisor");
  if (q.max_abs_coeff() == 0.0)
    throw PolyError("divide_by_quadratic: zero divisor");

  const std::vector<MultiIndex> p_idx = homogeneous_indices(p.n, p.d);
  const std::vector<MultiIndex> r_idx = homogeneous_indices(p.n, p.d - 2);
  std::map<MultiIndex, int> p_pos;
  for (std::size_t i = 0; i < p_idx.size(); ++i)
    p_pos[p_idx[i]] = static_cast<int>(i);

  const int rows = static_cast<int>(p_idx.size());
  const int cols = static_cast<int>(r_idx.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const MultiIndex& rj = r_idx[static_cast<std::size_t>(j)];
    for (const auto& [qi, qc] : q.coeff) {
      MultiIndex target(rj.size());
      for (std::size_t t = 0; t < rj.size(); ++t) target[t] = rj[t] + qi[t];
      a(p_pos.at(target), j) += qc;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  for (const auto& [pi, pc] : p.coeff) rhs(p_pos.at(pi)) = pc;

  // Q nonzero makes R -> coeffs(Q R) injective (polynomials over R form an
  // integral domain), so the least-squares minimizer is unique.
  const Eigen::VectorXd r = a.householderQr().solve(rhs);
  const Eigen::VectorXd defect = rhs - a * r;

  DivisionResult out;
  out.quotient.n = p.n;
  out.quotient.d = p.d - 2;
  for (int j = 0; j < cols; ++j)
    out.quotient.coeff[r_idx[static_cast<std::size_t>(j)]] = r(j);
  out.residual = defect.cwiseAbs().maxCoeff();
  out.scale = p.max_abs_coeff();
  out.tol = tol;
  out.divisible = out.scale == 0.0 || out.residual < tol * out.scale;
  return out;
}

GammaDivisibility gamma_divisibility_check(const MetricDefinition& def,
                                           std::span<const double> x,
                                           const Table& g1, const Table& g2,
                                           double tol) {
  const int n = def.dim;
  if (n < 2) throw PolyError("gamma_divisibility_check: need dimension >= 2");
  const AlphaData A = alpha_data(def, x);
  const BetaData B = beta_data(def, A, x);

  const auto table_fn = [&A, &B](const Table& t) {
    return [&A, &B, &t](std::span<const double> y) {
      return eval_table(t, table_inputs(A, B, y));
    };
  };
  const HomPoly big_g1 = extract_hompoly(table_fn(g1), n, 5);
  const HomPoly big_g2 = extract_hompoly(table_fn(g2), n, 4);

  const HomPoly beta_p = linear_from_vector(B.b_lo);
  const HomPoly e00_p = quadratic_from_matrix(B.eij);

  const Eigen::MatrixXd h = A.a - B.b_lo * B.b_lo.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success)
    throw PolyError(
        "gamma_divisibility_check: alpha^2 - beta^2 is not positive definite "
        "at this point");

  GammaDivisibility out;
  out.quadratic = quadratic_from_matrix(h);
  out.combination = hompoly_product(big_g2, beta_p);
  out.combination.add_scaled(big_g1, -1.0);
  const double factor = 18.0 * (n - 1.0) * (1.0 - B.b2);
  out.combination.add_scaled(
      hompoly_product(beta_p, hompoly_product(e00_p, e00_p)), factor);
  out.division = divide_by_quadratic(out.combination, out.quadratic, tol);
  return out;
}

GammaDivisibility gamma_divisibility_check(const MetricDefinition& def,
                                           std::span<const double> x,
                                           double tol) {
  const TableVariants v = operative_variants();
  return gamma_divisibility_check(def, x, gamma1_table(v), gamma2_table(v),
                                  tol);
}

}  // namespace rlab
