#include "svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bosestat::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::set_ranges(double x_min, double x_max, double y_min,
                         double y_max) {
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  x_min_ = x_min;
  x_max_ = x_max;
  y_min_ = y_min;
  y_max_ = y_max;
  ranged_ = true;
}

void SvgPlot::add_points(const std::vector<double>& xs,
                         const std::vector<double>& ys,
                         const std::string& color) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("point arrays differ in length");
  }
  series_.push_back({Series::Kind::points, xs, ys, 0.0, color});
}

void SvgPlot::add_line(const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::string& color) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("line arrays differ in length");
  }
  series_.push_back({Series::Kind::line, xs, ys, 0.0, color});
}

void SvgPlot::add_bars(const std::vector<double>& centers,
                       const std::vector<double>& heights, double width,
                       const std::string& color) {
  if (centers.size() != heights.size()) {
    throw std::invalid_argument("bar arrays differ in length");
  }
  series_.push_back({Series::Kind::bars, centers, heights, width, color});
}

std::string SvgPlot::render() const {
  double x_min = x_min_, x_max = x_max_, y_min = y_min_, y_max = y_max_;
  if (!ranged_) {
    x_min = y_min = 1e300;
    x_max = y_max = -1e300;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        x_min = std::min(x_min, s.xs[i]);
        x_max = std::max(x_max, s.xs[i]);
        y_min = std::min(y_min, s.kind == Series::Kind::bars ? 0.0 : s.ys[i]);
        y_max = std::max(y_max, s.ys[i]);
      }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!(y_max > y_min)) y_max = y_min + 1.0;
  }
  const double x_pad = 0.05 * (x_max - x_min);
  const double y_pad = 0.05 * (y_max - y_min);
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    return kTop + (y_max - y) / (y_max - y_min) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         title_ + "</text>\n";

  // frame
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  for (int t = 0; t <= 5; ++t) {
    const double fx = x_min + (x_max - x_min) * t / 5.0;
    const double fy = y_min + (y_max - y_min) * t / 5.0;
    out += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(kTop + plot_h) +
           "\" x2=\"" + num(px(fx)) + "\" y2=\"" + num(kTop + plot_h + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           num(fx) + "</text>\n";
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(fy)) +
           "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(py(fy)) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           num(fy) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" +
         num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         x_label_ + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2) + ")\">" + y_label_ + "</text>\n";

  for (const auto& s : series_) {
    if (s.kind == Series::Kind::points) {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        out += "<circle cx=\"" + num(px(s.xs[i])) + "\" cy=\"" +
               num(py(s.ys[i])) + "\" r=\"3.5\" fill=\"" + s.color + "\"/>\n";
      }
    } else if (s.kind == Series::Kind::line) {
      std::string pts;
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        pts += num(px(s.xs[i])) + "," + num(py(s.ys[i])) + " ";
      }
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             s.color + "\" stroke-width=\"1.5\"/>\n";
    } else {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        const double x0 = px(s.xs[i] - s.bar_width / 2.0);
        const double x1 = px(s.xs[i] + s.bar_width / 2.0);
        const double y0 = py(std::max(0.0, s.ys[i]));
        const double y1 = py(std::min(0.0, s.ys[i]));
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
               num(x1 - x0) + "\" height=\"" + num(std::max(0.5, y1 - y0)) +
               "\" fill=\"" + s.color + "\" fill-opacity=\"0.6\"/>\n";
      }
    }
  }
  out += "</svg>\n";
  return out;
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write plot file: " + path);
  }
  out << render();
}

}  // namespace bosestat::cli
