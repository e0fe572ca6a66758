#include "chromalex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chromalex::svg {
namespace {

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a8c5f", "#8a5ea8",
                          "#c98a2b", "#4f5d75"};
constexpr int kColors = 6;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[40];
  const double a = std::abs(v);
  if (v != 0.0 && (a >= 10000.0 || a < 0.01)) {
    std::snprintf(buf, sizeof(buf), "%.2e", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  }
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void pad() {
    if (hi <= lo) {
      lo -= 0.5;
      hi += 0.5;
      return;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }

  double unit(double v) const { return (v - lo) / (hi - lo); }
};

Range span_of(const std::vector<Series>& series, bool use_x) {
  Range r;
  bool first = true;
  for (const auto& s : series) {
    const auto& vals = use_x ? s.x : s.y;
    for (double v : vals) {
      if (first) {
        r.lo = r.hi = v;
        first = false;
      } else {
        r.include(v);
      }
    }
  }
  r.pad();
  return r;
}

void axis_and_ticks(std::string& out, int left, int top, int right, int bottom,
                    const Range& xr, const Range& yr) {
  out += "<rect x='" + std::to_string(left) + "' y='" + std::to_string(top) +
         "' width='" + std::to_string(right - left) + "' height='" +
         std::to_string(bottom - top) +
         "' fill='none' stroke='#444444' stroke-width='1'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = t / 4.0;
    const double px = left + fx * (right - left);
    const double py = bottom - fx * (bottom - top);
    out += "<text x='" + fmt(px) + "' y='" + std::to_string(bottom + 18) +
           "' font-size='11' text-anchor='middle' fill='#333333'>" +
           fmt_tick(xr.lo + fx * (xr.hi - xr.lo)) + "</text>\n";
    out += "<text x='" + std::to_string(left - 6) + "' y='" + fmt(py + 4) +
           "' font-size='11' text-anchor='end' fill='#333333'>" +
           fmt_tick(yr.lo + fx * (yr.hi - yr.lo)) + "</text>\n";
    if (t > 0 && t < 4) {
      out += "<line x1='" + std::to_string(left) + "' y1='" + fmt(py) + "' x2='" +
             std::to_string(right) + "' y2='" + fmt(py) +
             "' stroke='#dddddd' stroke-width='1'/>\n";
    }
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series, int width, int height) {
  const int left = 64, top = 40;
  const int right = width - 24, bottom = height - 52;
  const Range xr = span_of(series, true);
  const Range yr = span_of(series, false);

  std::string out;
  out += "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(width) +
         "' height='" + std::to_string(height) + "'>\n";
  out += "<rect width='100%' height='100%' fill='#ffffff'/>\n";
  out += "<text x='" + std::to_string(width / 2) +
         "' y='22' font-size='15' text-anchor='middle' fill='#111111'>" +
         escape(title) + "</text>\n";
  axis_and_ticks(out, left, top, right, bottom, xr, yr);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kColors];
    const auto& ser = series[s];
    std::string points;
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      const double px = left + xr.unit(ser.x[i]) * (right - left);
      const double py = bottom - yr.unit(ser.y[i]) * (bottom - top);
      points += fmt(px) + "," + fmt(py) + " ";
      out += "<circle cx='" + fmt(px) + "' cy='" + fmt(py) + "' r='2.5' fill='" +
             color + "'/>\n";
    }
    if (ser.x.size() > 1) {
      out += "<polyline points='" + points + "' fill='none' stroke='" + color +
             "' stroke-width='1.5'/>\n";
    }
    if (!ser.label.empty()) {
      const int ly = top + 16 + 16 * static_cast<int>(s);
      out += "<line x1='" + std::to_string(right - 120) + "' y1='" +
             std::to_string(ly - 4) + "' x2='" + std::to_string(right - 96) +
             "' y2='" + std::to_string(ly - 4) + "' stroke='" + color +
             "' stroke-width='2'/>\n";
      out += "<text x='" + std::to_string(right - 90) + "' y='" + std::to_string(ly) +
             "' font-size='11' fill='#333333'>" + escape(ser.label) + "</text>\n";
    }
  }

  out += "<text x='" + std::to_string((left + right) / 2) + "' y='" +
         std::to_string(height - 14) +
         "' font-size='12' text-anchor='middle' fill='#333333'>" + escape(x_label) +
         "</text>\n";
  out += "<text x='16' y='" + std::to_string((top + bottom) / 2) +
         "' font-size='12' text-anchor='middle' fill='#333333' transform='rotate(-90 16 " +
         std::to_string((top + bottom) / 2) + ")'>" + escape(y_label) + "</text>\n";
  out += "</svg>\n";
  return out;
}

std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<Bar>& bars, int width, int height) {
  const int left = 64, top = 40;
  const int right = width - 24, bottom = height - 52;

  Range yr;
  bool first = true;
  for (const auto& b : bars) {
    const double lo = b.value - b.ci_half;
    const double hi = b.value + b.ci_half;
    if (first) {
      yr.lo = std::min(lo, 0.0);
      yr.hi = hi;
      first = false;
    } else {
      yr.include(lo);
      yr.include(hi);
    }
    yr.include(0.0);
  }
  yr.pad();

  std::string out;
  out += "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(width) +
         "' height='" + std::to_string(height) + "'>\n";
  out += "<rect width='100%' height='100%' fill='#ffffff'/>\n";
  out += "<text x='" + std::to_string(width / 2) +
         "' y='22' font-size='15' text-anchor='middle' fill='#111111'>" +
         escape(title) + "</text>\n";
  Range xr;
  xr.lo = 0.0;
  xr.hi = 1.0;
  axis_and_ticks(out, left, top, right, bottom, xr, yr);

  const double slot = static_cast<double>(right - left) / std::max<std::size_t>(bars.size(), 1);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const char* color = kPalette[i % kColors];
    const double cx = left + (static_cast<double>(i) + 0.5) * slot;
    const double bw = 0.6 * slot;
    const double y0 = bottom - yr.unit(0.0) * (bottom - top);
    const double y1 = bottom - yr.unit(bars[i].value) * (bottom - top);
    out += "<rect x='" + fmt(cx - bw / 2) + "' y='" + fmt(std::min(y0, y1)) +
           "' width='" + fmt(bw) + "' height='" + fmt(std::abs(y0 - y1)) +
           "' fill='" + color + "' fill-opacity='0.8'/>\n";
    if (bars[i].ci_half > 0.0) {
      const double yl = bottom - yr.unit(bars[i].value - bars[i].ci_half) * (bottom - top);
      const double yh = bottom - yr.unit(bars[i].value + bars[i].ci_half) * (bottom - top);
      out += "<line x1='" + fmt(cx) + "' y1='" + fmt(yl) + "' x2='" + fmt(cx) +
             "' y2='" + fmt(yh) + "' stroke='#222222' stroke-width='1.5'/>\n";
      for (double yy : {yl, yh}) {
        out += "<line x1='" + fmt(cx - 5) + "' y1='" + fmt(yy) + "' x2='" +
               fmt(cx + 5) + "' y2='" + fmt(yy) +
               "' stroke='#222222' stroke-width='1.5'/>\n";
      }
    }
    out += "<text x='" + fmt(cx) + "' y='" + std::to_string(bottom + 18) +
           "' font-size='11' text-anchor='middle' fill='#333333'>" +
           escape(bars[i].label) + "</text>\n";
  }

  out += "<text x='16' y='" + std::to_string((top + bottom) / 2) +
         "' font-size='12' text-anchor='middle' fill='#333333' transform='rotate(-90 16 " +
         std::to_string((top + bottom) / 2) + ")'>" + escape(y_label) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace chromalex::svg
