#pragma once

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "ccf/stats.hpp"

namespace ccf {

namespace plot_detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kW = 640, kH = 400, kL = 70, kR = 20, kT = 40, kB = 50;

inline std::string frame(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                         double x0, double x1, double y0, double y1) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) + "</text>\n";
  s += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kH - kB) + "\" x2=\"" + num(kW - kR) + "\" y2=\"" + num(kH - kB) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kT) + "\" x2=\"" + num(kL) + "\" y2=\"" + num(kH - kB) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(kL) + "\" y=\"" + num(kH - kB + 16) + "\">" + num(x0) + "</text>\n";
  s += "<text x=\"" + num(kW - kR) + "\" y=\"" + num(kH - kB + 16) + "\" text-anchor=\"end\">" + num(x1) + "</text>\n";
  s += "<text x=\"" + num(kL - 4) + "\" y=\"" + num(kH - kB) + "\" text-anchor=\"end\">" + num(y0) + "</text>\n";
  s += "<text x=\"" + num(kL - 4) + "\" y=\"" + num(kT + 10) + "\" text-anchor=\"end\">" + num(y1) + "</text>\n";
  s += "<text x=\"320\" y=\"" + num(kH - 12) + "\" text-anchor=\"middle\">" + escape(xlabel) + "</text>\n";
  s += "<text x=\"16\" y=\"200\" text-anchor=\"middle\" transform=\"rotate(-90 16 200)\">" + escape(ylabel) + "</text>\n";
  return s;
}

}  // namespace plot_detail

// Bar chart of a histogram, with an optional vertical marker line.
inline std::string histogram_svg(std::span<const HistogramBin> bins, const std::string& title,
                                 const std::string& xlabel, const double* marker = nullptr) {
  using namespace plot_detail;
  if (bins.empty()) return {};
  const double x0 = bins.front().lower, x1 = bins.back().upper;
  std::size_t ymax = 1;
  for (const auto& b : bins) ymax = std::max(ymax, b.count);
  const double sx = (kW - kL - kR) / (x1 - x0), sy = (kH - kT - kB) / static_cast<double>(ymax);
  std::string s = frame(title, xlabel, "count", x0, x1, 0, static_cast<double>(ymax));
  for (const auto& b : bins) {
    const double h = sy * static_cast<double>(b.count);
    s += "<rect x=\"" + num(kL + sx * (b.lower - x0)) + "\" y=\"" + num(kH - kB - h) + "\" width=\"" +
         num(std::max(0.5, sx * (b.upper - b.lower) - 1)) + "\" height=\"" + num(h) +
         "\" fill=\"steelblue\"/>\n";
  }
  if (marker && *marker >= x0 && *marker <= x1) {
    const double x = kL + sx * (*marker - x0);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(kT) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kH - kB) +
         "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  return s + "</svg>\n";
}

// Step chart of bar heights by category index (e.g. coupon rate per bin).
inline std::string bars_svg(std::span<const double> values, const std::string& title, const std::string& xlabel,
                            const std::string& ylabel) {
  using namespace plot_detail;
  if (values.empty()) return {};
  const double ymax = std::max(*std::max_element(values.begin(), values.end()), 1e-12);
  const double w = (kW - kL - kR) / static_cast<double>(values.size());
  const double sy = (kH - kT - kB) / ymax;
  std::string s = frame(title, xlabel, ylabel, 0, static_cast<double>(values.size()), 0, ymax);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double h = sy * values[i];
    s += "<rect x=\"" + num(kL + w * static_cast<double>(i) + 1) + "\" y=\"" + num(kH - kB - h) + "\" width=\"" +
         num(w - 2) + "\" height=\"" + num(h) + "\" fill=\"firebrick\"/>\n";
  }
  return s + "</svg>\n";
}

}  // namespace ccf
