#pragma once

// Minimal self-contained SVG charts for campaign summaries: fitness bars
// with stall overlays, alternative-selection rate bars, and a significance
// heat table. No external renderer; output is plain SVG 1.1.

#include "idionet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace idionet::svg {

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline void append_rect(std::string& s, double x, double y, double w, double h,
                        const std::string& fill, double opacity = 1.0) {
  s += "<rect x='" + num(x) + "' y='" + num(y) + "' width='" + num(w) +
       "' height='" + num(h) + "' fill='" + fill + "'";
  if (opacity < 1.0) s += " fill-opacity='" + num(opacity) + "'";
  s += "/>\n";
}

inline void append_text(std::string& s, double x, double y,
                        const std::string& text, int size = 12,
                        const std::string& anchor = "middle",
                        const std::string& fill = "#222") {
  s += "<text x='" + num(x) + "' y='" + num(y) + "' font-size='" +
       std::to_string(size) +
       "' font-family='sans-serif' text-anchor='" + anchor + "' fill='" +
       fill + "'>" + text + "</text>\n";
}

inline void append_line(std::string& s, double x1, double y1, double x2,
                        double y2, const std::string& stroke = "#888") {
  s += "<line x1='" + num(x1) + "' y1='" + num(y1) + "' x2='" + num(x2) +
       "' y2='" + num(y2) + "' stroke='" + stroke + "' stroke-width='1'/>\n";
}

inline std::string svg_open(int w, int h) {
  return "<svg xmlns='http://www.w3.org/2000/svg' width='" +
         std::to_string(w) + "' height='" + std::to_string(h) +
         "' viewBox='0 0 " + std::to_string(w) + " " + std::to_string(h) +
         "'>\n<rect width='100%' height='100%' fill='white'/>\n";
}

// Mean fitness per controller as bars, mean stall count per controller as a
// narrow overlay bar on a secondary scale.
inline std::string fitness_chart(const experiments::WorldSummary& s) {
  const int width = 720, height = 380;
  const double left = 70, right = 60, top = 48, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const auto& cs = s.controllers;
  double f_max = 1.0, stall_max = 1.0;
  for (const auto& c : cs) {
    if (c.completed == 0) continue;
    f_max = std::max(f_max, c.mean_f);
    stall_max = std::max(stall_max, c.mean_stalls);
  }
  f_max *= 1.1;
  stall_max *= 1.1;
  std::string out = svg_open(width, height);
  append_text(out, width / 2.0, 24, "Mean fitness and stall count, " + s.world,
              15);
  append_line(out, left, top, left, top + plot_h);
  append_line(out, left, top + plot_h, left + plot_w, top + plot_h);
  for (int g = 0; g <= 4; ++g) {
    const double frac = g / 4.0;
    const double y = top + plot_h * (1 - frac);
    append_line(out, left - 4, y, left, y);
    append_text(out, left - 8, y + 4, num(f_max * frac), 10, "end");
    append_text(out, left + plot_w + 8, y + 4, num(stall_max * frac), 10,
                "start", "#c2571a");
  }
  append_text(out, left - 46, top + plot_h / 2, "fitness", 11, "middle");
  append_text(out, left + plot_w + 44, top + plot_h / 2, "stalls", 11,
              "middle", "#c2571a");
  const double slot = plot_w / std::max<std::size_t>(cs.size(), 1);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    const double x0 = left + slot * i;
    if (c.completed > 0) {
      const double bh = plot_h * c.mean_f / f_max;
      append_rect(out, x0 + slot * 0.14, top + plot_h - bh, slot * 0.44, bh,
                  c.controller == "I_D" ? "#2a6fb0" : "#7aa6cc");
      const double sh = plot_h * c.mean_stalls / stall_max;
      append_rect(out, x0 + slot * 0.62, top + plot_h - sh, slot * 0.24, sh,
                  "#c2571a", 0.85);
    } else {
      append_text(out, x0 + slot / 2, top + plot_h - 8, "n/a", 10);
    }
    append_text(out, x0 + slot / 2, top + plot_h + 16, c.controller, 11);
    append_text(out, x0 + slot / 2, top + plot_h + 32,
                num(c.good_pct) + "% good", 9, "middle", "#555");
  }
  out += "</svg>\n";
  return out;
}

// Share of ticks on which each controller picked a non-winning antibody,
// split into overall / stalled / unstalled bars.
inline std::string mu_chart(const experiments::WorldSummary& s) {
  const int width = 720, height = 360;
  const double left = 64, right = 20, top = 48, bottom = 72;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const auto& cs = s.controllers;
  double rate_max = 0.05;
  for (const auto& c : cs)
    rate_max = std::max({rate_max, c.mean_mu_rate, c.mu_rate_stalled,
                         c.mu_rate_free});
  rate_max = std::min(1.0, rate_max * 1.15);
  std::string out = svg_open(width, height);
  append_text(out, width / 2.0, 24,
              "Alternative-selection rate, " + s.world, 15);
  append_line(out, left, top, left, top + plot_h);
  append_line(out, left, top + plot_h, left + plot_w, top + plot_h);
  for (int g = 0; g <= 4; ++g) {
    const double frac = g / 4.0;
    const double y = top + plot_h * (1 - frac);
    append_line(out, left - 4, y, left, y);
    append_text(out, left - 8, y + 4, num(rate_max * frac * 100) + "%", 10,
                "end");
  }
  const double slot = plot_w / std::max<std::size_t>(cs.size(), 1);
  const char* colors[3] = {"#444444", "#c2571a", "#7aa6cc"};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    const double x0 = left + slot * i;
    const double vals[3] = {c.mean_mu_rate, c.mu_rate_stalled, c.mu_rate_free};
    for (int k = 0; k < 3; ++k) {
      const double bh = plot_h * std::min(vals[k], rate_max) / rate_max;
      append_rect(out, x0 + slot * (0.12 + 0.26 * k), top + plot_h - bh,
                  slot * 0.22, bh, colors[k]);
    }
    append_text(out, x0 + slot / 2, top + plot_h + 16, c.controller, 11);
  }
  const double ly = top + plot_h + 40;
  const char* labels[3] = {"overall", "stalled ticks", "free ticks"};
  double lx = left;
  for (int k = 0; k < 3; ++k) {
    append_rect(out, lx, ly - 10, 12, 12, colors[k]);
    append_text(out, lx + 18, ly, labels[k], 11, "start");
    lx += 130;
  }
  out += "</svg>\n";
  return out;
}

// One row per rival controller, one column per metric; cell shade encodes the
// one-tailed confidence that the baseline beats it on that metric.
inline std::string significance_chart(const experiments::WorldSummary& s) {
  std::vector<std::string> controllers;
  std::vector<std::string> metrics;
  for (const auto& row : s.significance) {
    if (std::find(controllers.begin(), controllers.end(), row.controller) ==
        controllers.end())
      controllers.push_back(row.controller);
    if (std::find(metrics.begin(), metrics.end(), row.metric) == metrics.end())
      metrics.push_back(row.metric);
  }
  const double cell_w = 120, cell_h = 34, left = 90, top = 72;
  const int width = static_cast<int>(left + cell_w * metrics.size() + 30);
  const int height = static_cast<int>(top + cell_h * controllers.size() + 40);
  std::string out = svg_open(width, height);
  append_text(out, width / 2.0, 24,
              "Confidence that the base controller wins, " + s.world, 15);
  append_text(out, width / 2.0, 42,
              "cell: confidence level; filled when above 95 / 99 / 99.9", 10,
              "middle", "#555");
  for (std::size_t m = 0; m < metrics.size(); ++m)
    append_text(out, left + cell_w * m + cell_w / 2, top - 10, metrics[m], 12);
  for (std::size_t c = 0; c < controllers.size(); ++c) {
    append_text(out, left - 10, top + cell_h * c + cell_h / 2 + 4,
                controllers[c], 12, "end");
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      const experiments::SignificanceRow* cell = nullptr;
      for (const auto& row : s.significance)
        if (row.controller == controllers[c] && row.metric == metrics[m])
          cell = &row;
      const double x = left + cell_w * m, y = top + cell_h * c;
      std::string fill = "#f2f2f2";
      if (cell) {
        if (cell->significant_999)
          fill = "#1a7a3c";
        else if (cell->significant_99)
          fill = "#57a06b";
        else if (cell->significant_95)
          fill = "#9cc7a8";
      }
      append_rect(out, x + 1, y + 1, cell_w - 2, cell_h - 2, fill);
      if (cell) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.1f%%", cell->level_pct);
        append_text(out, x + cell_w / 2, y + cell_h / 2 + 4, buf, 11,
                    "middle", cell->significant_99 ? "#ffffff" : "#222222");
      } else {
        append_text(out, x + cell_w / 2, y + cell_h / 2 + 4, "n/a", 11);
      }
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace idionet::svg
