#include "snnlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "snnlab/csv.hpp"

namespace snnlab {

namespace {

constexpr double kWidth = 760, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round a raw span to a friendly tick spacing (1/2/5 times a power of ten).
double nice_tick(double span) {
  if (span <= 0.0) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void SvgChart::add_series(const std::string& name, const std::string& color,
                          std::vector<std::pair<double, double>> points) {
  series_.push_back({name, color, std::move(points)});
}

std::string SvgChart::render() const {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series_) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\">" << title_ << "</text>\n";

  const double xt = nice_tick(xmax - xmin);
  for (double x = std::ceil(xmin / xt) * xt; x <= xmax + 1e-12; x += xt) {
    out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(x))
        << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(kHeight - kBottom + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(x)
        << "</text>\n";
  }
  const double yt = nice_tick(ymax - ymin);
  for (double y = std::ceil(ymin / yt) * yt; y <= ymax + 1e-12; y += yt) {
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(y)) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(py(y)) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(y) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(y)
        << "</text>\n";
  }

  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label_
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label_ << "</text>\n";

  for (const auto& s : series_) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.points) out << num(px(x)) << "," << num(py(y)) << " ";
    out << "\"/>\n";
  }

  double ly = kTop + 14;
  for (const auto& s : series_) {
    out << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + 34
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + 40 << "\" y=\"" << ly
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.name << "</text>\n";
    ly += 16;
  }

  out << "</svg>\n";
  return out.str();
}

void SvgChart::commit(const std::string& path) const { write_text_file(path, render()); }

}  // namespace snnlab
