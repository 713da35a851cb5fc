#pragma once

// Definitional curvature oracle.  Everything here is computed straight from
// F = sqrt(a_ij y^i y^j) + b_i y^i by truncated jets in the 2n variables
// (x, y):
//
//   G^k     = g^{kl} ( [F^2]_{x^m y^l} y^m - [F^2]_{x^l} ) / 4
//   R^i_k   = 2 d_{x^k} G^i - y^j d^2 G^i / dx^j dy^k
//           + 2 G^j d^2 G^i / dy^j dy^k - (dG^i/dy^j)(dG^j/dy^k)
//   Ric     = R^m_m
//   Ric_ij  = [Ric]_{y^i y^j} / 2
//   r       = g^{ij} Ric_ij
//
// No structure of the Randers class is used on this route; it exists to
// arbitrate the closed-form expressions.

#include <Eigen/Dense>

#include "rlab/jet.hpp"
#include "rlab/metric.hpp"

namespace rlab {
namespace detail {

// Solve A u = rhs over the truncated jet ring by Gauss-Jordan elimination
// with value-magnitude pivoting.  A is row-major n x n and is consumed.
template <class T>
std::vector<JetT<T>> jet_solve(std::vector<JetT<T>> A, std::vector<JetT<T>> u) {
  const int n = static_cast<int>(u.size());
  auto at = [&](int r, int c) -> JetT<T>& {
    return A[static_cast<size_t>(r * n + c)];
  };
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(scalar_value(at(r, c))) > std::abs(scalar_value(at(p, c))))
        p = r;
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(at(c, k), at(p, k));
      std::swap(u[static_cast<size_t>(c)], u[static_cast<size_t>(p)]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const JetT<T> f = at(r, c) / at(c, c);
      for (int k = 0; k < n; ++k) at(r, k) -= f * at(c, k);
      u[static_cast<size_t>(r)] -= f * u[static_cast<size_t>(c)];
    }
  }
  for (int c = 0; c < n; ++c)
    u[static_cast<size_t>(c)] = u[static_cast<size_t>(c)] / at(c, c);
  return u;
}

}  // namespace detail

// The jet pipeline state at one (x, y).  Variables 0..n-1 are x, n..2n-1
// are y.  Orders: fsq has `base`, g and G have base-2, ric has base-4.
template <class T>
struct DefJets {
  int n = 0;
  std::shared_ptr<const JetLayout> layout;
  std::vector<JetT<T>> seeds;
  JetT<T> fsq;
  std::vector<JetT<T>> g;  // g_kl, row-major
  std::vector<JetT<T>> G;  // spray coefficients
  JetT<T> ric;             // only populated when requested
};

template <class T>
DefJets<T> def_jets(const MetricDefinition& def, std::span<const T> x,
                    std::span<const T> y, int base, bool want_ric) {
  const int n = def.dim;
  DefJets<T> D;
  D.n = n;
  D.layout = JetLayout::get(2 * n, base);
  D.seeds.reserve(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i)
    D.seeds.push_back(JetT<T>::variable(D.layout, i, x[static_cast<size_t>(i)]));
  for (int i = 0; i < n; ++i)
    D.seeds.push_back(
        JetT<T>::variable(D.layout, n + i, y[static_cast<size_t>(i)]));
  const std::span<const JetT<T>> xs(D.seeds.data(), static_cast<size_t>(n));
  const std::span<const double> params(def.param_values);

  // F^2 = a_ij y^i y^j + 2 sqrt(a_ij y^i y^j) beta + beta^2.
  JetT<T> ayy = JetT<T>(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      JetT<T> term = eval<JetT<T>>(*def.a_entry(i, j), xs, params) *
                     D.seeds[static_cast<size_t>(n + i)] *
                     D.seeds[static_cast<size_t>(n + j)];
      ayy += (i == j) ? term : 2.0 * term;
    }
  JetT<T> bet = JetT<T>(0.0);
  for (int i = 0; i < n; ++i)
    bet += eval<JetT<T>>(*def.b[static_cast<size_t>(i)], xs, params) *
           D.seeds[static_cast<size_t>(n + i)];
  const JetT<T> alpha = sqrt(ayy);
  D.fsq = ayy + 2.0 * alpha * bet + bet * bet;

  // Fundamental tensor and spray right-hand side.
  std::vector<JetT<T>> dfy;
  dfy.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) dfy.push_back(D.fsq.deriv(n + k));
  D.g.resize(static_cast<size_t>(n * n), JetT<T>(0.0));
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      JetT<T> gkl = 0.5 * dfy[static_cast<size_t>(k)].deriv(n + l);
      D.g[static_cast<size_t>(k * n + l)] = gkl;
      D.g[static_cast<size_t>(l * n + k)] = gkl;
    }
  std::vector<JetT<T>> rhs;
  rhs.reserve(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    JetT<T> acc = -D.fsq.deriv(l);
    for (int m = 0; m < n; ++m)
      acc += dfy[static_cast<size_t>(l)].deriv(m) *
             D.seeds[static_cast<size_t>(n + m)];
    rhs.push_back(0.25 * acc);
  }
  D.G = detail::jet_solve(D.g, std::move(rhs));

  if (want_ric) {
    // Trace of the Riemann curvature directly; R^i_k is never materialized.
    std::vector<JetT<T>> dGdy(static_cast<size_t>(n * n), JetT<T>(0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dGdy[static_cast<size_t>(i * n + j)] =
            D.G[static_cast<size_t>(i)].deriv(n + j);
    JetT<T> ric = JetT<T>(0.0);
    for (int i = 0; i < n; ++i) {
      ric += 2.0 * D.G[static_cast<size_t>(i)].deriv(i);
      const JetT<T>& dGi_dyi = dGdy[static_cast<size_t>(i * n + i)];
      for (int j = 0; j < n; ++j) {
        ric -= D.seeds[static_cast<size_t>(n + j)] * dGi_dyi.deriv(j);
        ric += 2.0 * D.G[static_cast<size_t>(j)] * dGi_dyi.deriv(n + j);
        ric -= dGdy[static_cast<size_t>(i * n + j)] *
               dGdy[static_cast<size_t>(j * n + i)];
      }
    }
    D.ric = ric;
  }
  return D;
}

// Numeric results of the full definitional route at one (x, y); base order 6.
struct DefCurvature {
  double F = 0;
  Eigen::MatrixXd g, g_inv;  // fundamental tensor and its inverse
  double ric = 0;            // Ricci curvature (the y-scalar)
  Eigen::MatrixXd ric_ij;    // [Ric]_{y^i y^j} / 2
  double r = 0;              // g^{ij} Ric_ij
};

DefCurvature curvature_def(const MetricDefinition& def, std::span<const double> x,
                           std::span<const double> y);

// Ricci scalar alone (base order 4: cheaper).
double ricci_def(const MetricDefinition& def, std::span<const double> x,
                 std::span<const double> y);

// The same Ricci tensor through nested jets: order-2 jets in y outside an
// order-4 pipeline, instead of one flat order-6 pipeline.
Eigen::MatrixXd ricci_tensor_nested(const MetricDefinition& def,
                                    std::span<const double> x,
                                    std::span<const double> y);

// Spray coefficients G^k and their y-divergence d G^m / d y^m.
Eigen::VectorXd spray_def(const MetricDefinition& def, std::span<const double> x,
                          std::span<const double> y);
double spray_ydiv_def(const MetricDefinition& def, std::span<const double> x,
                      std::span<const double> y);

}  // namespace rlab
