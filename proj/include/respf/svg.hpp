#pragma once

#include <string>
#include <vector>

#include "respf/types.hpp"

namespace respf {

/// Minimal native SVG 1.1 line-plot writer: one polyline per series, an
/// optional shaded band, axes with tick labels, a title. No external
/// plotting dependency.
class SvgFigure {
 public:
  SvgFigure(std::string title, std::string xlabel, std::string ylabel,
            int width = 760, int height = 480);

  void add_series(std::string name, const std::vector<double>& x,
                  const std::vector<double>& y, std::string color = "");
  /// Shaded band between lower and upper curves (rendered as one polygon).
  void add_band(std::string name, const std::vector<double>& x,
                const std::vector<double>& lower,
                const std::vector<double>& upper,
                std::string color = "#4477cc");
  /// Heat map cells (used by the potential-landscape view); values mapped
  /// to a blue-white-red ramp.
  void add_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                   const Matrix& values);

  std::string render() const;
  void save(const std::string& path) const;

 private:
  struct Series {
    std::string name, color;
    std::vector<double> x, y;
  };
  struct Band {
    std::string name, color;
    std::vector<double> x, lo, hi;
  };
  std::string title_, xlabel_, ylabel_;
  int width_, height_;
  std::vector<Series> series_;
  std::vector<Band> bands_;
  bool has_heatmap_ = false;
  std::vector<double> hm_x_, hm_y_;
  Matrix hm_v_;
};

}  // namespace respf
