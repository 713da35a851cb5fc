#include "rlab/random_metric.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace rlab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_term(std::string& s, double c, const std::string& mono) {
  if (c == 0.0) return;
  if (s.empty()) {
    s = fmt(c);
  } else {
    s += (c < 0 ? " - " : " + ") + fmt(std::abs(c));
  }
  if (!mono.empty()) s += "*" + mono;
}

// A random polynomial of degree <= 2: constant, linear, and quadratic parts
// drawn uniformly with the given amplitudes; roughly 60% of the candidate
// monomials are kept so the sparsity pattern varies between seeds.
struct Poly2 {
  double c0 = 0.0;
  std::vector<std::pair<double, std::string>> terms;

  std::string text(double scale, double offset) const {
    std::string s;
    append_term(s, offset + scale * c0, "");
    for (const auto& [c, m] : terms) append_term(s, scale * c, m);
    if (s.empty()) s = "0";
    return s;
  }
};

Poly2 draw_poly(std::mt19937& rng, int n, double cconst, double clin,
                double cquad) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(0.6);
  Poly2 p;
  p.c0 = cconst * u(rng);
  for (int i = 0; i < n; ++i) {
    const double c = clin * u(rng);
    if (keep(rng)) p.terms.emplace_back(c, "x" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double c = cquad * u(rng);
      const std::string m =
          i == j ? "x" + std::to_string(i + 1) + "^2"
                 : "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
      if (keep(rng)) p.terms.emplace_back(c, m);
    }
  return p;
}

}  // namespace

MetricDefinition random_randers(int n, std::uint32_t seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u ^ (static_cast<std::uint32_t>(n) << 24));
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // Raw building blocks, drawn once; only the overall beta scale is adapted
  // if the admissibility check asks for it.
  std::vector<Poly2> adiag, aoff, bpol;
  for (int i = 0; i < n; ++i)
    adiag.push_back(draw_poly(rng, n, 0.0, 0.25, 0.4));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      aoff.push_back(draw_poly(rng, n, 0.08, 0.12, 0.2));
  std::vector<double> dir(static_cast<size_t>(n));
  double norm = 0.0;
  for (auto& d : dir) {
    d = 2.0 * u01(rng) - 1.0;
    norm += d * d;
  }
  norm = std::sqrt(norm);
  for (auto& d : dir) d /= (norm > 0 ? norm : 1.0);
  for (int i = 0; i < n; ++i) bpol.push_back(draw_poly(rng, n, 0.0, 0.3, 0.4));
  double lambda = 0.15 + 0.55 * u01(rng);

  const auto build = [&](double lam) {
    std::string text = "dim = " + std::to_string(n) + "\n[alpha]\n";
    int off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::string e =
            i == j ? adiag[static_cast<size_t>(i)].text(1.0, 1.0)
                   : aoff[static_cast<size_t>(off++)].text(1.0, 0.0);
        text += "a" + std::to_string(i + 1) + std::to_string(j + 1) + " = \"" +
                e + "\"\n";
      }
    text += "[beta]\n";
    for (int i = 0; i < n; ++i)
      text += "b" + std::to_string(i + 1) + " = \"" +
              bpol[static_cast<size_t>(i)].text(
                  0.4 * lam, lam * dir[static_cast<size_t>(i)]) +
              "\"\n";
    return parse_metric_text(text, "random:" + std::to_string(seed));
  };

  // Probe the sample box; shrink beta until admissible everywhere on it.
  for (int attempt = 0; attempt < 32; ++attempt) {
    MetricDefinition def = build(lambda);
    bool ok = true;
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    const auto probe = [&](const std::vector<double>& pt) {
      try {
        check_admissible(def, pt);
        return true;
      } catch (const MetricDomainError&) {
        return false;
      }
    };
    ok = probe(x);
    for (int corner = 0; ok && corner < (1 << n); ++corner) {
      for (int k = 0; k < n; ++k)
        x[static_cast<size_t>(k)] = (corner >> k & 1) ? 0.3 : -0.3;
      ok = probe(x);
    }
    if (ok) return def;
    lambda *= 0.7;
  }
  throw MetricDomainError("random metric generation failed to stabilize");
}

MetricDefinition random_flat_randers(int n, int mode, std::uint32_t seed) {
  std::mt19937 rng(seed ^ 0x85ebca6bu ^
                   (static_cast<std::uint32_t>(4 * n + mode) << 20));
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Linear coefficients c[i][j] and quadratic coefficients d[i][j][k]
  // (symmetric in j <= k), masked by the requested mode.
  const bool with_c = mode <= 2;
  const bool with_d = mode >= 2;
  std::vector<std::vector<double>> c(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  if (with_c) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        c[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0.5 * u(rng);
    if (mode == 0)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          auto& ci = c[static_cast<size_t>(i)];
          auto& cj = c[static_cast<size_t>(j)];
          ci[static_cast<size_t>(j)] =
              i == j ? 0.0 : -cj[static_cast<size_t>(i)];
        }
  }
  std::vector<std::vector<std::vector<double>>> d(
      static_cast<size_t>(n),
      std::vector<std::vector<double>>(
          static_cast<size_t>(n),
          std::vector<double>(static_cast<size_t>(n), 0.0)));
  if (with_d)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v = 0.5 * u(rng);
          d[static_cast<size_t>(i)][static_cast<size_t>(j)]
           [static_cast<size_t>(k)] = v;
          d[static_cast<size_t>(i)][static_cast<size_t>(k)]
           [static_cast<size_t>(j)] = v;
        }

  const auto build = [&](double lam) {
    std::string text = "dim = " + std::to_string(n) + "\n[alpha]\n";
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        text += "a" + std::to_string(i + 1) + std::to_string(j + 1) + " = \"" +
                (i == j ? "1" : "0") + "\"\n";
    text += "[beta]\n";
    for (int i = 0; i < n; ++i) {
      std::string e;
      for (int j = 0; j < n; ++j)
        append_term(e, lam * c[static_cast<size_t>(i)][static_cast<size_t>(j)],
                    "x" + std::to_string(j + 1));
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v = (j == k ? 1.0 : 2.0) *
                           d[static_cast<size_t>(i)][static_cast<size_t>(j)]
                            [static_cast<size_t>(k)];
          const std::string m =
              j == k ? "x" + std::to_string(j + 1) + "^2"
                     : "x" + std::to_string(j + 1) + "*x" +
                           std::to_string(k + 1);
          append_term(e, lam * v, m);
        }
      if (e.empty()) e = "0";
      text += "b" + std::to_string(i + 1) + " = \"" + e + "\"\n";
    }
    return parse_metric_text(text, "flat:" + std::to_string(mode) + ":" +
                                       std::to_string(seed));
  };

  double lambda = 1.0;
  for (int attempt = 0; attempt < 32; ++attempt) {
    MetricDefinition def = build(lambda);
    bool ok = true;
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int corner = 0; ok && corner < (1 << n); ++corner) {
      for (int k = 0; k < n; ++k)
        x[static_cast<size_t>(k)] = (corner >> k & 1) ? 0.35 : -0.35;
      try {
        check_admissible(def, x);
      } catch (const MetricDomainError&) {
        ok = false;
      }
    }
    if (ok) return def;
    lambda *= 0.7;
  }
  throw MetricDomainError("flat metric generation failed to stabilize");
}

}  // namespace rlab
