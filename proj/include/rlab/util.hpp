#pragma once

// Shared odds and ends: a bounded worker-thread map and deterministic
// direction sets on the unit sphere.  The direction sets feed every
// least-squares fit in the classification module, so they must be
// reproducible across runs and platforms for a fixed (n, count, seed).

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace rlab {

// Worker count for data-parallel loops: hardware concurrency, capped by
// the RANDERS_LAB_THREADS environment variable when it is set to a
// positive integer.  Always at least 1.
int worker_threads();

// Runs fn(0), ..., fn(count - 1), possibly concurrently.  fn must be safe
// to call from multiple threads; iteration order is unspecified.  The
// first exception thrown by any invocation is rethrown on the caller's
// thread once all workers have finished.
void parallel_for(int count, const std::function<void(int)>& fn);

// `count` well-spread unit vectors in R^n, deterministic in
// (n, count, seed).  Uses the golden-angle sequence on the circle, a
// Fibonacci lattice on S^2, and a rotated Halton sequence pushed through
// the normal quantile in higher dimensions.  Distinct seeds rotate the
// sequence so repeated draws decorrelate.
std::vector<Eigen::VectorXd> sphere_directions(int n, int count,
                                               std::uint32_t seed);

// Standard normal quantile (Acklam's rational approximation, relative
// error below 1.2e-9 on (0, 1)).  Exposed for tests.
double inverse_normal_cdf(double p);

}  // namespace rlab
