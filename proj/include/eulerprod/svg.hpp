#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "boundary_scan.hpp"
#include "satotate.hpp"
#include "table_io.hpp"

namespace eulerprod::svg {

inline constexpr double kWidth = 640, kHeight = 400, kMargin = 40;

// Bars: empirical density per bin. Curve: (2/pi) sin^2(theta).
inline void satotate_histogram(std::ostream& os, const SatoTateReport& r) {
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  const double n = static_cast<double>(r.samples);
  double ymax = 2.0 / std::numbers::pi;
  for (const auto& b : r.histogram) ymax = std::max(ymax, b.count / (n * (b.hi - b.lo)));
  ymax *= 1.1;
  auto sx = [&](double theta) { return kMargin + plot_w * theta / std::numbers::pi; };
  auto sy = [&](double y) { return kHeight - kMargin - plot_h * y / ymax; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& b : r.histogram) {
    const double density = b.count / (n * (b.hi - b.lo));
    os << "<rect x=\"" << format_double(sx(b.lo)) << "\" y=\"" << format_double(sy(density)) << "\" width=\""
       << format_double(sx(b.hi) - sx(b.lo)) << "\" height=\"" << format_double(sy(0) - sy(density))
       << "\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" points=\"";
  for (int i = 0; i <= 200; ++i) {
    const double t = std::numbers::pi * i / 200.0;
    os << format_double(sx(t)) << ',' << format_double(sy(satotate_density(t))) << ' ';
  }
  os << "\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << sy(0) << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << sy(0)
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">theta(p), " << r.samples
     << " primes; sup distance " << format_double(r.sup_distance) << "</text>\n";
  os << "</svg>\n";
}

// Scatter of (sigma, t) for the zero cloud; the vertical line is Re(s) = 0.
inline void zero_cloud_scatter(std::ostream& os, const std::vector<ZeroCloudPoint>& pts, const std::string& title) {
  double smax = 1e-3, tmax = 1e-3;
  for (const auto& p : pts) {
    smax = std::max(smax, std::abs(p.sigma));
    tmax = std::max(tmax, std::abs(p.t));
  }
  smax *= 1.1;
  tmax *= 1.1;
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  auto sx = [&](double s) { return kMargin + plot_w * (s + smax) / (2 * smax); };
  auto sy = [&](double t) { return kHeight - kMargin - plot_h * (t + tmax) / (2 * tmax); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << sx(0) << "\" y1=\"" << kMargin << "\" x2=\"" << sx(0) << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& p : pts)
    os << "<circle cx=\"" << format_double(sx(p.sigma)) << "\" cy=\"" << format_double(sy(p.t))
       << "\" r=\"1.5\" fill=\"darkgreen\" fill-opacity=\"0.6\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  os << "</svg>\n";
}

}  // namespace eulerprod::svg
