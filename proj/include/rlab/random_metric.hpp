#pragma once

// Seeded generator of admissible Randers metrics with polynomial data of
// degree <= 2 and no special structure.  Used to sample the space of metrics
// when validating closed-form identities term by term: the norm of beta is
// varied deliberately so that coefficients depending on ||b||^2 are
// identifiable.

#include <cstdint>

#include "rlab/metric.hpp"

namespace rlab {

// Admissible on the sample box [-0.3, 0.3]^n.  The same seed always yields
// the same metric; different seeds vary every coefficient including the
// overall size of beta.
MetricDefinition random_randers(int n, std::uint32_t seed);

// Flat-background family: alpha is the Euclidean metric and
// b_i = c_ij x^j + d_ijk x^j x^k, so every covariant derivative of beta is a
// polynomial identity in the coefficients.  `mode` selects the shape of the
// data, which decorrelates contractions that move together on generic
// metrics:
//   0  antisymmetric c, no d   (r_ij == 0: pure s-sector)
//   1  full c, no d
//   2  full c and d
//   3  d only                  (purely quadratic beta)
// Admissible on [-0.35, 0.35]^n; deterministic in (n, mode, seed).
MetricDefinition random_flat_randers(int n, int mode, std::uint32_t seed);

}  // namespace rlab
