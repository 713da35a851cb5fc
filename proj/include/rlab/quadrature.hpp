#pragma once

// Deterministic quadrature on the unit sphere, used as an independent oracle
// for the Busemann-Hausdorff normalization:
//
//   sigma(x) = Vol(B^n) / Vol{ y : F(x, y) < 1 }
//            = 1 / mean_{w in S^{n-1}} [ F(x, w)^{-n} ].

#include <span>
#include <vector>

#include "rlab/metric.hpp"

namespace rlab {

// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int m, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Spherical product rule: trapezoid in the periodic angle (spectrally
// accurate), Gauss-Legendre in the polar angles.  `level` points per polar
// angle and 2*level in the periodic one.
double sigma_bh_quadrature(const MetricDefinition& def,
                           std::span<const double> x, int level = 64);

}  // namespace rlab
