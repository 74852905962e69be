#pragma once

// Minimal static SVG plots: scatter points, polylines and bars in a single
// framed viewport with linear axes and numeric ticks. Callers transform
// their data (for log axes) and label accordingly.

#include <string>
#include <vector>

namespace bosestat::cli {

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  // data ranges; expanded by a small margin when rendering
  void set_ranges(double x_min, double x_max, double y_min, double y_max);

  void add_points(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color);
  void add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color);
  void add_bars(const std::vector<double>& centers,
                const std::vector<double>& heights, double width,
                const std::string& color);

  std::string render() const;
  void write(const std::string& path) const;

 private:
  struct Series {
    enum class Kind { points, line, bars } kind;
    std::vector<double> xs, ys;
    double bar_width = 0.0;
    std::string color;
  };

  std::string title_, x_label_, y_label_;
  double x_min_ = 0.0, x_max_ = 1.0, y_min_ = 0.0, y_max_ = 1.0;
  bool ranged_ = false;
  std::vector<Series> series_;
};

}  // namespace bosestat::cli
