// Copyright 2026 The rankrange Authors
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

#include "rankrange/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rankrange::svg {

namespace {

constexpr int kSize = 420;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct CircleMap {
  // Unit disk mapped into the canvas with a small margin.
  double cx = kSize / 2.0, cy = kSize / 2.0, r = kSize / 2.0 - 30.0;
  double x(Complex z) const { return cx + r * z.real(); }
  double y(Complex z) const { return cy - r * z.imag(); }
};

void open_svg(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
     << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " "
     << kSize << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void circle(std::ostringstream& os, double x, double y, double r,
            const std::string& fill, const std::string& stroke) {
  os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
     << num(r) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
     << "\"/>\n";
}

void line(std::ostringstream& os, double x1, double y1, double x2, double y2,
          const std::string& stroke, double width) {
  os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\""
     << num(x2) << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke
     << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

std::string render_unitary(const RangePlotData& data) {
  std::ostringstream os;
  open_svg(os);
  CircleMap map;
  circle(os, map.cx, map.cy, map.r, "none", "#888888");
  line(os, map.cx - map.r, map.cy, map.cx + map.r, map.cy, "#dddddd", 1);
  line(os, map.cx, map.cy - map.r, map.cx, map.cy + map.r, "#dddddd", 1);
  for (const auto& [a, b] : data.chords) {
    line(os, map.x(a), map.y(a), map.x(b), map.y(b), "#4477cc", 1.5);
  }
  for (Complex z : data.spectrum) {
    circle(os, map.x(z), map.y(z), 5, "#222222", "none");
  }
  if (data.range.kind == RangeKind::point) {
    circle(os, map.x(data.range.point), map.y(data.range.point), 6,
           "#cc3333", "none");
  } else if (data.range.kind == RangeKind::segment) {
    line(os, map.x(data.range.endpoints[0]), map.y(data.range.endpoints[0]),
         map.x(data.range.endpoints[1]), map.y(data.range.endpoints[1]),
         "#cc3333", 4);
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_hermitian(const RangePlotData& data) {
  std::ostringstream os;
  open_svg(os);
  double lo = data.spectrum.front().real();
  double hi = data.spectrum.front().real();
  for (Complex z : data.spectrum) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double y0 = kSize / 2.0;
  auto x = [&](double v) {
    return 30.0 + (v - lo) / (hi - lo) * (kSize - 60.0);
  };
  line(os, 30, y0, kSize - 30, y0, "#888888", 1.5);
  for (Complex z : data.spectrum) {
    line(os, x(z.real()), y0 - 8, x(z.real()), y0 + 8, "#222222", 2);
  }
  if (data.range.kind == RangeKind::real_interval) {
    line(os, x(data.range.lo), y0, x(data.range.hi), y0, "#cc3333", 5);
  } else if (data.range.kind == RangeKind::point) {
    circle(os, x(data.range.point.real()), y0, 6, "#cc3333", "none");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_plot(const RangePlotData& data) {
  return data.unit_circle ? render_unitary(data) : render_hermitian(data);
}

}  // namespace rankrange::svg
