#pragma once

// Homogeneous polynomials in y with numeric coefficients: extraction from
// black-box evaluators, products, and least-squares division by a
// quadratic form with no real zeros.
//
// This mechanizes the divisibility step of the scalar-curvature analysis.
// At a fixed point x the G route writes 4 F^5 r = G1 + alpha G2 with G1,
// G2 polynomial in y, and the hand derivation asserts that
//
//   P := G2 beta - G1 + 18 (n-1) (1 - b^2) beta e_00^2
//
// is divisible by the quadratic alpha^2 - beta^2.  For admissible data
// that quadratic is positive definite, so it has no real zeros and the
// divisibility cannot be probed by evaluating P on its zero set; instead
// we recover P's coefficients exactly (it is homogeneous of degree 5) and
// solve the division as a linear system on coefficients.

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlab/metric.hpp"
#include "rlab/sigma_tables.hpp"

namespace rlab {

class PolyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponent vector, one entry per variable.
using MultiIndex = std::vector<int>;

// All multi-indices over n variables with total degree d, in lexicographic
// order (descending on the leading exponent).
std::vector<MultiIndex> homogeneous_indices(int n, int d);

// A homogeneous polynomial of degree d in n variables.  Invariant: every
// key has n entries summing to d.
struct HomPoly {
  int n = 0;
  int d = 0;
  std::map<MultiIndex, double> coeff;

  double eval(std::span<const double> y) const;
  double max_abs_coeff() const;

  // this += scale * other; degrees and variable counts must match.
  HomPoly& add_scaled(const HomPoly& other, double scale);
};

HomPoly hompoly_product(const HomPoly& p, const HomPoly& q);

// y^T m y as a degree-2 polynomial (m is symmetrized) and v_i y^i as a
// degree-1 polynomial.
HomPoly quadratic_from_matrix(const Eigen::MatrixXd& m);
HomPoly linear_from_vector(const Eigen::VectorXd& v);

// Recovers the coefficients of f, assumed homogeneous of degree d in n
// variables, from evaluations on a deterministic integer grid.
// Homogeneity is probed first (f(2u) against 2^d f(u) at two fixed probe
// points); a mismatch, or an ill-conditioned interpolation system, throws
// PolyError with the offending numbers in the message.
HomPoly extract_hompoly(const std::function<double(std::span<const double>)>& f,
                        int n, int d, double hom_tol = 1e-6);

// Least-squares division P = Q * R + residual over coefficient space; Q
// must be quadratic and nonzero.  The map R -> coeffs(Q * R) is injective,
// so the minimizer is unique; `residual` is the max-abs coefficient of
// P - Q * R and `divisible` compares it against tol * max-abs coeff of P.
struct DivisionResult {
  HomPoly quotient;
  double residual = 0.0;
  double scale = 0.0;  // max-abs coefficient of P
  double tol = 0.0;
  bool divisible = false;
};

DivisionResult divide_by_quadratic(const HomPoly& p, const HomPoly& q,
                                   double tol = 1e-8);

// The divisibility check at a point: extracts G1 (degree 5) and G2
// (degree 4) from the given tables, forms P above, and divides by
// alpha^2 - beta^2.  The quadratic's positive definiteness is verified
// (Cholesky) before dividing.  The factor 18 (n-1) (1 - b^2) carries the
// dimension factor (n-1) that the source derivation dropped; without it
// the division fails for n >= 3 (see the n = 3 regression test).
struct GammaDivisibility {
  DivisionResult division;
  HomPoly combination;  // P
  HomPoly quadratic;    // alpha^2 - beta^2
};

GammaDivisibility gamma_divisibility_check(const MetricDefinition& def,
                                           std::span<const double> x,
                                           const Table& g1, const Table& g2,
                                           double tol = 1e-8);

// Same, with both tables taken at the operative variants.
GammaDivisibility gamma_divisibility_check(const MetricDefinition& def,
                                           std::span<const double> x,
                                           double tol = 1e-8);

}  // namespace rlab
