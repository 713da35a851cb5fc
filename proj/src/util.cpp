#include "rlab/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rlab {
namespace {

double fractional(double v) { return v - std::floor(v); }

// Van der Corput radical inverse in the given prime base.
double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

// 32-bit mix (splitmix-style) used to derive per-axis rotations from the
// user seed without correlations between nearby seeds.
std::uint32_t mix32(std::uint32_t v) {
  v ^= v >> 16;
  v *= 0x7feb352du;
  v ^= v >> 15;
  v *= 0x846ca68bu;
  v ^= v >> 16;
  return v;
}

double unit_from_seed(std::uint32_t seed, std::uint32_t axis) {
  return mix32(seed ^ (0x9e3779b9u * (axis + 1))) * 0x1p-32;
}

}  // namespace

int worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RANDERS_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1 &&
        static_cast<unsigned long>(cap) < hw)
      hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::vector<Eigen::VectorXd> sphere_directions(int n, int count,
                                               std::uint32_t seed) {
  if (n < 1) throw std::invalid_argument("sphere_directions: n must be >= 1");
  if (count < 0)
    throw std::invalid_argument("sphere_directions: count must be >= 0");
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  constexpr double kTau = 6.283185307179586476925286766559;
  // 1/phi, the golden-angle increment as a fraction of the full turn.
  constexpr double kGoldenFrac = 0.61803398874989484820458683436564;

  if (n == 1) {
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd y(1);
      y(0) = (i % 2 == 0) ? 1.0 : -1.0;
      dirs.push_back(y);
    }
    return dirs;
  }

  if (n == 2) {
    const double offset = unit_from_seed(seed, 0);
    for (int i = 0; i < count; ++i) {
      const double angle = kTau * fractional(offset + kGoldenFrac * i);
      Eigen::VectorXd y(2);
      y << std::cos(angle), std::sin(angle);
      dirs.push_back(y);
    }
    return dirs;
  }

  if (n == 3) {
    // Fibonacci lattice: evenly spaced latitudes, golden-angle longitudes.
    const double offset = unit_from_seed(seed, 0);
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double angle = kTau * fractional(offset + kGoldenFrac * i);
      Eigen::VectorXd y(3);
      y << rho * std::cos(angle), rho * std::sin(angle), z;
      dirs.push_back(y);
    }
    return dirs;
  }

  // n >= 4: rotated Halton points mapped through the normal quantile give
  // an isotropic Gaussian stream; normalizing projects it to the sphere.
  static const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                23, 29, 31, 37, 41, 43, 47, 53};
  if (n > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw std::invalid_argument("sphere_directions: dimension too large");
  std::vector<double> shift(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    shift[static_cast<std::size_t>(j)] =
        unit_from_seed(seed, static_cast<std::uint32_t>(j));
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd y(n);
    for (int j = 0; j < n; ++j) {
      double u = fractional(radical_inverse(static_cast<std::uint64_t>(i) + 1,
                                            kPrimes[j]) +
                            shift[static_cast<std::size_t>(j)]);
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      y(j) = inverse_normal_cdf(u);
    }
    const double norm = y.norm();
    if (norm < 1e-12) {
      y.setZero();
      y(0) = 1.0;
    } else {
      y /= norm;
    }
    dirs.push_back(y);
  }
  return dirs;
}

}  // namespace rlab
