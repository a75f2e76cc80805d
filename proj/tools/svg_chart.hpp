#pragma once

// Static SVG rendering of a Dimensional Outlier Graph: one marker per
// dimension score with two horizontal percentile band lines.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace copod_cli {

struct DimensionalChart {
  std::string title;
  std::vector<double> per_dim;
  std::vector<std::string> names;
  double band_99 = 0.0;           // drawn per dimension when bands vary
  std::vector<double> band_99_per_dim;
  std::vector<double> band_contamination_per_dim;
  double contamination = 0.1;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Piecewise-horizontal band polyline across the dimension slots.
inline std::string band_path(const std::vector<double>& band, double x0, double step,
                             double y_base, double y_scale) {
  std::string d;
  for (std::size_t j = 0; j < band.size(); ++j) {
    const double y = y_base - band[j] * y_scale;
    const double xa = x0 + static_cast<double>(j) * step - step * 0.4;
    const double xb = x0 + static_cast<double>(j) * step + step * 0.4;
    d += (j == 0 ? "M" : " L") + num(xa) + " " + num(y) + " L" + num(xb) + " " + num(y);
  }
  return d;
}

}  // namespace detail

inline void write_dimensional_chart(const DimensionalChart& chart, const std::string& path) {
  const std::size_t d = chart.per_dim.size();
  if (d == 0) throw std::runtime_error("chart needs at least one dimension");

  const double width = 760.0;
  const double height = 430.0;
  const double left = 70.0, right = 25.0, top = 58.0, bottom = 72.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double y_max = 0.0;
  for (double v : chart.per_dim) y_max = std::max(y_max, v);
  for (double v : chart.band_99_per_dim) y_max = std::max(y_max, v);
  for (double v : chart.band_contamination_per_dim) y_max = std::max(y_max, v);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.12;

  const double y_base = top + plot_h;
  const double y_scale = plot_h / y_max;
  const double step = plot_w / static_cast<double>(d);
  const double x0 = left + step / 2.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(width) +
         "\" height=\"" + detail::num(height) + "\" viewBox=\"0 0 " + detail::num(width) + " " +
         detail::num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + detail::num(width / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::escape(chart.title) + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(top) + "\" x2=\"" +
         detail::num(left) + "\" y2=\"" + detail::num(y_base) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(y_base) + "\" x2=\"" +
         detail::num(left + plot_w) + "\" y2=\"" + detail::num(y_base) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Y ticks.
  const int n_ticks = 5;
  for (int t = 0; t <= n_ticks; ++t) {
    const double v = y_max * t / n_ticks;
    const double y = y_base - v * y_scale;
    svg += "<line x1=\"" + detail::num(left - 4) + "\" y1=\"" + detail::num(y) + "\" x2=\"" +
           detail::num(left) + "\" y2=\"" + detail::num(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::num(left - 8) + "\" y=\"" + detail::num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           detail::tick_label(v) + "</text>\n";
  }

  // X ticks: dimension indices, names underneath when they fit.
  const bool show_names = d <= 16;
  for (std::size_t j = 0; j < d; ++j) {
    const double x = x0 + static_cast<double>(j) * step;
    svg += "<line x1=\"" + detail::num(x) + "\" y1=\"" + detail::num(y_base) + "\" x2=\"" +
           detail::num(x) + "\" y2=\"" + detail::num(y_base + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::num(x) + "\" y=\"" + detail::num(y_base + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(j + 1) + "</text>\n";
    if (show_names && j < chart.names.size() && !chart.names[j].empty()) {
      svg += "<text x=\"" + detail::num(x) + "\" y=\"" + detail::num(y_base + 33) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\" "
             "fill=\"#555\">" +
             detail::escape(chart.names[j]) + "</text>\n";
    }
  }
  svg += "<text x=\"" + detail::num(left + plot_w / 2) + "\" y=\"" +
         detail::num(height - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">dimension"
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + detail::num(top + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 18 " +
         detail::num(top + plot_h / 2) + ")\">dimension outlier score</text>\n";

  // Band lines.
  if (!chart.band_99_per_dim.empty()) {
    svg += "<path d=\"" + detail::band_path(chart.band_99_per_dim, x0, step, y_base, y_scale) +
           "\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"2\"/>\n";
  }
  if (!chart.band_contamination_per_dim.empty()) {
    svg += "<path d=\"" +
           detail::band_path(chart.band_contamination_per_dim, x0, step, y_base, y_scale) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
  }

  // Score polyline + markers.
  std::string line = "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t j = 0; j < d; ++j) {
    const double x = x0 + static_cast<double>(j) * step;
    const double y = y_base - chart.per_dim[j] * y_scale;
    line += detail::num(x) + "," + detail::num(y) + " ";
  }
  line += "\"/>\n";
  svg += line;
  for (std::size_t j = 0; j < d; ++j) {
    const double x = x0 + static_cast<double>(j) * step;
    const double y = y_base - chart.per_dim[j] * y_scale;
    const bool above = j < chart.band_99_per_dim.size() &&
                       chart.per_dim[j] >= chart.band_99_per_dim[j];
    svg += "<circle cx=\"" + detail::num(x) + "\" cy=\"" + detail::num(y) + "\" r=\"4\" fill=\"" +
           (above ? std::string("#d62728") : std::string("#1f77b4")) + "\"/>\n";
  }

  // Legend.
  const double lx = left + 8, ly = top - 24;
  svg += "<circle cx=\"" + detail::num(lx) + "\" cy=\"" + detail::num(ly) +
         "\" r=\"4\" fill=\"#1f77b4\"/>"
         "<text x=\"" + detail::num(lx + 10) + "\" y=\"" + detail::num(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">dimension score</text>\n";
  svg += "<line x1=\"" + detail::num(lx + 130) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" +
         detail::num(lx + 158) + "\" y2=\"" + detail::num(ly) +
         "\" stroke=\"#2e8b57\" stroke-width=\"2\"/>"
         "<text x=\"" + detail::num(lx + 164) + "\" y=\"" + detail::num(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">99th percentile</text>\n";
  svg += "<line x1=\"" + detail::num(lx + 280) + "\" y1=\"" + detail::num(ly) + "\" x2=\"" +
         detail::num(lx + 308) + "\" y2=\"" + detail::num(ly) +
         "\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>"
         "<text x=\"" + detail::num(lx + 314) + "\" y=\"" + detail::num(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" +
         detail::tick_label((1.0 - chart.contamination) * 100.0) +
         "th percentile (1 - contamination)</text>\n";

  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write SVG file: " + path);
  out << svg;
  if (!out) throw std::runtime_error("failed writing SVG file: " + path);
}

}  // namespace copod_cli
