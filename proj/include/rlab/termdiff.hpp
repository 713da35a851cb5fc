#pragma once

// Numerical arbitration of the homogeneous term tables against the
// definitional oracle.
//
// For each sample (metric, x, y) the oracle scalar curvature r and its
// reflection r(x, -y) give the exact parity split
//
//   W(y) = 4 F^5 r - 4 F^4 alpha r_alpha,
//   S1 = (W(y) - W(-y)) / 2,          S2 = (W(y) + W(-y)) / (2 alpha),
//   G1 = (V(y) - V(-y)) / 2,          G2 = (V(y) + V(-y)) / (2 alpha),
//
// with V := 4 F^5 r, against which the four tables are compared directly.
// The defective slots (TableVariants) are resolved by exhaustive
// combination search over two sample families — seeded random metrics and
// the Funk ball, whose closed-sector geometry (s_ij = 0, b_{i;j} = a_ij -
// b_i b_j, r = -n(n-1)/4) makes the r-sector cells large and analytic — and
// a per-term least-squares correction fit then confirms that no residual
// structure remains in any other slot.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlab/sigma_tables.hpp"

namespace rlab {

struct TermdiffSample {
  TableInputs in;
  double s1_true = 0;
  double s2_true = 0;
  double g1_true = 0;
  double g2_true = 0;
};

// Deterministic sample set over seeded random metrics; y is normalized to
// alpha(x, y) near 1 so every table term is of the order of its coefficient.
std::vector<TermdiffSample> termdiff_samples(std::span<const int> dims,
                                             int metrics_per_dim,
                                             int points_per_metric,
                                             int dirs_per_point,
                                             std::uint32_t seed);

// Deterministic sample set on the Funk ball, one entry per (dim, point,
// direction).  The Funk geometry kills the whole s-sector and makes every
// surviving cell O(1), so these samples pin the r-sector coefficients that
// generic random metrics only graze.
std::vector<TermdiffSample> termdiff_benchmark_samples(
    std::span<const int> dims, int points_per_dim, int dirs_per_point,
    std::uint32_t seed);

enum class FitTarget { kSigma1, kSigma2, kGamma1, kGamma2 };

struct ResidualStats {
  double max_abs = 0;
  double rms = 0;
};

// Scaled residual of one table against its parity-resolved oracle target.
ResidualStats table_residuals(const Table& t, FitTarget target,
                              std::span<const TermdiffSample> samples);

// Combined residual of a table pair (max of the two parts per sample).
ResidualStats sigma_residuals(const Table& s1, const Table& s2,
                              std::span<const TermdiffSample> samples);
ResidualStats gamma_residuals(const Table& g1, const Table& g2,
                              std::span<const TermdiffSample> samples);

// Least-squares fit of per-slot corrections delta_c(cell) = sum_k c_k
// phi_k(n, b2) with phi = {1, n, n^2, b2, b2 n} against the residual of
// `table`.  Returns the largest in-sample correction magnitude over all
// cells (coefficient units); `worst`, if given, receives a description of
// the largest cell.
double fit_corrections(const Table& table, FitTarget target,
                       std::span<const TermdiffSample> samples,
                       std::string* worst);

struct VariantFinding {
  std::string slot;
  std::string transcribed;
  std::string operative;
  bool transcription_wins = false;
  double residual_transcribed = 0;
  double residual_operative = 0;
};

struct ArbitrationReport {
  int samples = 0;
  // Structural diff between the entered even tables and the ones generated
  // from the odd tables by the exact eliminations; with transcribed values
  // this lists exactly the inconsistent slots, with operative values it
  // must be empty.
  std::vector<std::string> structural_clashes;
  std::vector<VariantFinding> findings;
  double sigma_max_transcribed = 0, sigma_max_operative = 0;
  double gamma_max_transcribed = 0, gamma_max_operative = 0;
  double sigma1_fit = 0, sigma2_fit = 0, gamma1_fit = 0, gamma2_fit = 0;
  std::vector<std::string> notes;
  // All variant winners are decisive, agree across the two routes, pass the
  // correction fit, and match the pinned operative_variants().
  bool decisive = false;
  bool matches_pinned = false;

  std::string to_text() const;
};

// Runs the full arbitration.  `quick` restricts the samples to dimensions
// {2, 3} (used by the unit tests); the full run adds n = 4.
ArbitrationReport arbitrate_tables(std::uint32_t seed, bool quick);

}  // namespace rlab
