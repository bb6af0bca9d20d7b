#pragma once

#include <string>
#include <utility>
#include <vector>

namespace snnlab {

// Hand-rolled SVG line chart: axes, ticks, legend, one polyline per series.
// Enough for the demo plots; no plotting dependency.
class SvgChart {
 public:
  SvgChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add_series(const std::string& name, const std::string& color,
                  std::vector<std::pair<double, double>> points);

  std::string render() const;
  void commit(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace snnlab
