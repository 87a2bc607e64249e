#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "duelbench/runner.hpp"
#include "duelbench/text_util.hpp"

namespace duelbench {

struct PlotSeries {
  std::string label;
  AggregateResult aggregate;
};

struct PlotOutput {
  std::string svg;
  std::string points_csv;  // series,step,mean,stderr — exactly what was drawn
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Regret curves with stderr bands on a log-x axis, as a self-contained SVG.
inline PlotOutput render_regret_plot(const std::vector<PlotSeries>& series) {
  require(!series.empty(), ErrorCode::BadParams, "plot needs at least one series");
  const auto& grid = series.front().aggregate.checkpoints;
  require(!grid.empty(), ErrorCode::BadParams, "plot needs checkpoints");
  for (const auto& s : series) {
    require(s.aggregate.checkpoints == grid, ErrorCode::MismatchedCheckpoints,
            "aggregates disagree on checkpoint grids");
  }

  const double width = 860.0, height = 520.0;
  const double left = 70.0, right = 30.0, top = 30.0, bottom = 50.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const double x_min = std::log10(static_cast<double>(grid.front()));
  const double x_max = std::log10(static_cast<double>(grid.back()));
  double y_max = 0.0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      y_max = std::max(y_max, s.aggregate.mean_regret[i] + s.aggregate.stderr_regret[i]);
    }
  }
  if (y_max <= 0.0) y_max = 1.0;

  auto x_of = [&](std::int64_t step) {
    const double lx = std::log10(static_cast<double>(step));
    const double f = x_max > x_min ? (lx - x_min) / (x_max - x_min) : 0.5;
    return left + f * plot_w;
  };
  auto y_of = [&](double value) { return top + plot_h * (1.0 - value / y_max); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) +
         "\" height=\"" + detail::svg_num(height) + "\" viewBox=\"0 0 " +
         detail::svg_num(width) + " " + detail::svg_num(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(top + plot_h) +
         "\" x2=\"" + detail::svg_num(left + plot_w) + "\" y2=\"" +
         detail::svg_num(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(top) +
         "\" x2=\"" + detail::svg_num(left) + "\" y2=\"" + detail::svg_num(top + plot_h) +
         "\" stroke=\"black\"/>\n";

  // decade ticks on x
  for (int e = static_cast<int>(std::ceil(x_min)); e <= static_cast<int>(std::floor(x_max)); ++e) {
    const double x = left + (x_max > x_min ? (e - x_min) / (x_max - x_min) : 0.5) * plot_w;
    svg += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(top + plot_h) +
           "\" x2=\"" + detail::svg_num(x) + "\" y2=\"" + detail::svg_num(top + plot_h + 6) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::svg_num(x) + "\" y=\"" + detail::svg_num(top + plot_h + 22) +
           "\" font-size=\"12\" text-anchor=\"middle\">1e" + std::to_string(e) + "</text>\n";
  }
  // y ticks
  for (int i = 0; i <= 5; ++i) {
    const double value = y_max * i / 5.0;
    const double y = y_of(value);
    svg += "<line x1=\"" + detail::svg_num(left - 6) + "\" y1=\"" + detail::svg_num(y) +
           "\" x2=\"" + detail::svg_num(left) + "\" y2=\"" + detail::svg_num(y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::svg_num(left - 10) + "\" y=\"" + detail::svg_num(y + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + format_double(value) + "</text>\n";
  }
  svg += "<text x=\"" + detail::svg_num(left + plot_w / 2) + "\" y=\"" +
         detail::svg_num(height - 10) +
         "\" font-size=\"13\" text-anchor=\"middle\">step</text>\n";
  svg += "<text x=\"16\" y=\"" + detail::svg_num(top + plot_h / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         detail::svg_num(top + plot_h / 2) + ")\">cumulative regret</text>\n";

  std::string csv = "series,step,mean,stderr\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& agg = series[s].aggregate;
    const char* color = palette[s % 6];

    // stderr band: mean+se forward, mean-se back
    std::string band = "<polygon fill=\"" + std::string(color) +
                       "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      band += detail::svg_num(x_of(grid[i])) + "," +
              detail::svg_num(y_of(agg.mean_regret[i] + agg.stderr_regret[i])) + " ";
    }
    for (std::size_t i = grid.size(); i-- > 0;) {
      band += detail::svg_num(x_of(grid[i])) + "," +
              detail::svg_num(y_of(std::max(0.0, agg.mean_regret[i] - agg.stderr_regret[i]))) +
              " ";
    }
    band += "\"/>\n";
    svg += band;

    std::string line = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                       "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      line += detail::svg_num(x_of(grid[i])) + "," + detail::svg_num(y_of(agg.mean_regret[i])) + " ";
      csv += series[s].label + "," + std::to_string(grid[i]) + "," +
             format_double(agg.mean_regret[i]) + "," + format_double(agg.stderr_regret[i]) + "\n";
    }
    line += "\"/>\n";
    svg += line;

    // legend entry
    const double ly = top + 16.0 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + detail::svg_num(left + 12) + "\" y1=\"" + detail::svg_num(ly) +
           "\" x2=\"" + detail::svg_num(left + 40) + "\" y2=\"" + detail::svg_num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + detail::svg_num(left + 46) + "\" y=\"" + detail::svg_num(ly + 4) +
           "\" font-size=\"12\">" + series[s].label + "</text>\n";
  }
  svg += "</svg>\n";
  return PlotOutput{std::move(svg), std::move(csv)};
}

}  // namespace duelbench
