#pragma once

// Zeros of the local factors 1 +- f(a(p)) T + T^2 mapped into the s-plane via
// T = p^{-s}. For unitary f they sit on Re(s) = 0; otherwise some leave the
// line and creep back toward it as p grows. This is numerical evidence for a
// natural boundary at Re(s) = 0, not a proof of one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "satotate.hpp"

namespace eulerprod {

struct ZeroCloudPoint {
  Prime p;
  double root_modulus;  // |T| at the zero
  double sigma;         // -ln|T| / ln p
  double t;             // principal branch, in (-pi/ln p, pi/ln p]
};

inline constexpr double kOffAxisThreshold = 1e-9;

// Both zeros of 1 + sign*c*T + T^2 with c = f(a(p)), in s-plane coordinates.
inline std::vector<ZeroCloudPoint> zero_cloud(const IntPolynomial& f, int sign, std::uint64_t cutoff,
                                              const AngleTable& angles) {
  if (sign != 1 && sign != -1) throw InvalidInput("zero_cloud: sign must be +1 or -1");
  if (cutoff > angles.cutoff())
    throw InvalidInput("zero_cloud: cutoff exceeds angle table cutoff");
  std::vector<PrimeAngle> used;
  for (const auto& e : angles.entries())
    if (e.p <= cutoff) used.push_back(e);

  std::vector<ZeroCloudPoint> out(2 * used.size());
  parallel_for(used.size(), [&](std::size_t i) {
    const auto& e = used[i];
    const double lp = std::log(static_cast<double>(e.p));
    const double b = sign * f.eval(e.a);
    std::complex<double> roots[2];
    const double disc = b * b - 4.0;
    if (disc <= 0.0) {
      const double im = std::sqrt(-disc) / 2.0;
      roots[0] = {-b / 2.0, im};
      roots[1] = {-b / 2.0, -im};
    } else {
      const double big = (-b - std::copysign(std::sqrt(disc), b)) / 2.0;
      roots[0] = big;
      roots[1] = 1.0 / big;
    }
    for (int k = 0; k < 2; ++k) {
      // conjugate pair with product 1: modulus is exactly 1
      const double modulus = disc <= 0.0 ? 1.0 : std::abs(roots[k]);
      double arg = std::arg(roots[k]);
      double t = -arg / lp;
      if (arg == std::numbers::pi) t = std::numbers::pi / lp;
      out[2 * i + k] = {e.p, modulus, -std::log(modulus) / lp, t};
    }
  });
  return out;
}

struct CloudSummary {
  std::size_t count_offaxis;
  double min_positive_sigma;  // +inf if no point has sigma > threshold
  double max_sigma;
};

inline CloudSummary cloud_summary(const std::vector<ZeroCloudPoint>& points) {
  if (points.empty()) throw InvalidInput("cloud_summary: no points");
  CloudSummary s{0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& pt : points) {
    if (std::abs(pt.sigma) > kOffAxisThreshold) ++s.count_offaxis;
    if (pt.sigma > kOffAxisThreshold) s.min_positive_sigma = std::min(s.min_positive_sigma, pt.sigma);
    s.max_sigma = std::max(s.max_sigma, pt.sigma);
  }
  return s;
}

}  // namespace eulerprod
