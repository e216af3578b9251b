#include "twinbeam/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tbl::svg {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round a range outward to tick-friendly bounds.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac < 1.5) {
    step = 1.0;
  } else if (frac < 3.5) {
    step = 2.0;
  } else if (frac < 7.5) {
    step = 5.0;
  } else {
    step = 10.0;
  }
  return step * mag;
}

}  // namespace

std::string render_plot(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<Series>& series, int width,
                        int height) {
  if (series.empty()) throw std::invalid_argument("render_plot: no series");
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || (!s.yerr.empty() && s.yerr.size() != s.y.size())) {
      throw std::invalid_argument("render_plot: series sizes disagree");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double lo = s.yerr.empty() ? s.y[i] : s.y[i] - s.yerr[i];
      const double hi = s.yerr.empty() ? s.y[i] : s.y[i] + s.yerr[i];
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, lo);
      y_max = std::max(y_max, hi);
    }
  }
  if (!(x_min < x_max)) x_max = x_min + 1.0;
  if (!(y_min < y_max)) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const int ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  auto px = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
  auto py = [&](double y) { return mt + ph * (y_max - y) / (y_max - y_min); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << escape(title) << "</text>\n";

  // Axes.
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const double xs = nice_step(x_max - x_min);
  for (double t = std::ceil(x_min / xs) * xs; t <= x_max + 1e-12 * xs; t += xs) {
    const double x = px(t);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << mt + ph << "\" x2=\""
       << fmt(x) << "\" y2=\"" << fmt(mt + ph + 5)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(mt + ph + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << fmt(t) << "</text>\n";
  }
  const double ys = nice_step(y_max - y_min);
  for (double t = std::ceil(y_min / ys) * ys; t <= y_max + 1e-12 * ys; t += ys) {
    const double y = py(t);
    os << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
       << ml << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(ml - 9) << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << fmt(t) << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << height / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 18 "
     << height / 2 << ")\">" << escape(y_label) << "</text>\n";

  // Data.
  int legend_row = 0;
  for (const auto& s : series) {
    if (!s.yerr.empty()) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.yerr[i] <= 0.0) continue;
        const double x = px(s.x[i]);
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py(s.y[i] - s.yerr[i]))
           << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(py(s.y[i] + s.yerr[i]))
           << "\" stroke=\"" << s.color << "\" stroke-width=\"0.6\"/>\n";
      }
    }
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    }
    os << "\"/>\n";
    const int ly = mt + 16 + 18 * legend_row++;
    os << "<line x1=\"" << ml + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + 40
       << "\" y2=\"" << ly << "\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + 46 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tbl::svg
