// Copyright 2026 The knapq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knapq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "knapq/types.hpp"

namespace knapq::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double place(double v, double pix_lo, double pix_hi) const {
    const double a = log ? std::log10(v) : v;
    const double l = log ? std::log10(lo) : lo;
    const double h = log ? std::log10(hi) : hi;
    const double t = h > l ? (a - l) / (h - l) : 0.5;
    return pix_lo + t * (pix_hi - pix_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int e_lo = static_cast<int>(std::floor(std::log10(lo)));
      const int e_hi = static_cast<int>(std::ceil(std::log10(hi)));
      for (int e = e_lo; e <= e_hi; ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
      }
      if (out.size() < 2) out = {lo, hi};
      return out;
    }
    const double span = hi - lo;
    if (span <= 0) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0})
      if (mag * mult >= raw) {
        step = mag * mult;
        break;
      }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
};

}  // namespace

std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  if (series.empty()) throw ValidationError("render_line_plot: no series");

  const double ml = 64, mr = 16, mt = 34, mb = 46;
  const double x0 = ml, x1 = spec.width - mr;
  const double y0 = spec.height - mb, y1 = mt;  // y grows downward in SVG

  Axis xa, ya;
  ya.log = spec.log_y;
  bool first_y = true, first_x = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      for (double v : {s.mean[i], s.lo[i], s.hi[i]}) {
        if (spec.log_y && !(v > 0)) continue;
        ya.lo = first_y ? v : std::min(ya.lo, v);
        ya.hi = first_y ? v : std::max(ya.hi, v);
        first_y = false;
      }
      xa.lo = first_x ? s.x[i] : std::min(xa.lo, s.x[i]);
      xa.hi = first_x ? s.x[i] : std::max(xa.hi, s.x[i]);
      first_x = false;
    }
  }
  if (first_y) {  // all values unusable (e.g. log axis with zeros)
    ya.lo = 0.1;
    ya.hi = 1.0;
  }
  if (xa.hi <= xa.lo) xa.hi = xa.lo + 1;
  if (spec.log_y) {
    if (!(ya.lo > 0)) ya.lo = 1e-3;
    if (ya.hi <= ya.lo) ya.hi = ya.lo * 10;
  } else {
    const double pad = 0.06 * (ya.hi - ya.lo + 1e-12);
    ya.lo -= pad;
    ya.hi += pad;
    if (ya.hi <= ya.lo) ya.hi = ya.lo + 1;
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
     << spec.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"14\">" << escape(spec.title)
     << "</text>\n";

  // Grid and ticks.
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double v : ya.ticks()) {
    const double y = ya.place(v, y0, y1);
    os << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x1)
       << "\" y2=\"" << fmt(y) << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  for (double v : xa.ticks()) {
    const double x = xa.place(v, x0, x1);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x)
       << "\" y2=\"" << fmt(y0 + 4) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y0 + 18)
       << "\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
  }
  os << "</g>\n";

  // Axes.
  os << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1)
     << "\" y2=\"" << fmt(y0) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
     << "\" y2=\"" << fmt(y1) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << escape(spec.x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << (y0 + y1) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
     << "transform=\"rotate(-90 16 " << (y0 + y1) / 2 << ")\">" << escape(spec.y_label)
     << "</text>\n";

  auto clamp_y = [&](double v) {
    if (!spec.log_y) return v;
    return std::max(v, ya.lo);
  };

  // Bands then lines, so lines stay visible.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 6];
    if (s.x.size() > 1) {
      os << "<path d=\"M";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << fmt(xa.place(s.x[i], x0, x1)) << ' ' << fmt(ya.place(clamp_y(s.hi[i]), y0, y1))
           << (i + 1 < s.x.size() ? " L" : " ");
      for (std::size_t r = s.x.size(); r-- > 0;)
        os << "L" << fmt(xa.place(s.x[r], x0, x1)) << ' '
           << fmt(ya.place(clamp_y(s.lo[r]), y0, y1)) << ' ';
      os << "Z\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << fmt(xa.place(s.x[i], x0, x1)) << ',' << fmt(ya.place(clamp_y(s.mean[i]), y0, y1))
         << ' ';
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << "<circle cx=\"" << fmt(xa.place(s.x[i], x0, x1)) << "\" cy=\""
         << fmt(ya.place(clamp_y(s.mean[i]), y0, y1)) << "\" r=\"2.6\" fill=\"" << color
         << "\"/>\n";
  }

  // Legend.
  const double lx = x0 + 10;
  double ly = y1 + 8;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 6];
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 22)
       << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[si].label)
       << "</text>\n";
    ly += 16;
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace knapq::svg
