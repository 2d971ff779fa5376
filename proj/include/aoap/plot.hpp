// Copyright 2026 The aoap-mcts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "aoap/bench.hpp"
#include "aoap/errors.hpp"

namespace aoap {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace detail

// Static SVG line chart of PCS against roll-outs: one polyline per policy
// (when it has two or more points), a marker per point and a +/- one stderr
// whisker per point. Output depends only on the rows.
inline std::string render_plot(const std::vector<PcsRow>& rows) {
  if (rows.empty()) throw PreconditionError("cannot plot an empty PCS table");
  constexpr double kW = 640, kH = 400, kLeft = 60, kRight = 130, kTop = 20, kBottom = 50;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;

  std::vector<std::string> order;  // first-appearance order of policies
  std::map<std::string, std::vector<const PcsRow*>> series;
  double tmin = static_cast<double>(rows.front().rollouts), tmax = tmin;
  for (const auto& r : rows) {
    if (!series.count(r.policy)) order.push_back(r.policy);
    series[r.policy].push_back(&r);
    tmin = std::min(tmin, static_cast<double>(r.rollouts));
    tmax = std::max(tmax, static_cast<double>(r.rollouts));
  }
  const auto x = [&](double t) {
    return tmax > tmin ? kLeft + (t - tmin) / (tmax - tmin) * pw : kLeft + pw / 2;
  };
  const auto y = [&](double p) {
    return kTop + (1.0 - std::clamp(p, 0.0, 1.0)) * ph;
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(kW) +
       "\" height=\"" + detail::num(kH) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<g class=\"axes\" stroke=\"black\">\n";
  s += "<line x1=\"" + detail::num(kLeft) + "\" y1=\"" + detail::num(kTop + ph) + "\" x2=\"" +
       detail::num(kLeft + pw) + "\" y2=\"" + detail::num(kTop + ph) + "\"/>\n";
  s += "<line x1=\"" + detail::num(kLeft) + "\" y1=\"" + detail::num(kTop) + "\" x2=\"" +
       detail::num(kLeft) + "\" y2=\"" + detail::num(kTop + ph) + "\"/>\n";
  s += "</g>\n";
  for (int i = 0; i <= 4; ++i) {
    const double p = i / 4.0;
    s += "<text x=\"" + detail::num(kLeft - 8) + "\" y=\"" + detail::num(y(p) + 4) +
         "\" text-anchor=\"end\">" + detail::num(p) + "</text>\n";
  }
  s += "<text x=\"" + detail::num(kLeft) + "\" y=\"" + detail::num(kTop + ph + 18) +
       "\" text-anchor=\"middle\">" + std::to_string(static_cast<long long>(tmin)) + "</text>\n";
  if (tmax > tmin) {
    s += "<text x=\"" + detail::num(kLeft + pw) + "\" y=\"" + detail::num(kTop + ph + 18) +
         "\" text-anchor=\"middle\">" + std::to_string(static_cast<long long>(tmax)) +
         "</text>\n";
  }
  s += "<text x=\"" + detail::num(kLeft + pw / 2) + "\" y=\"" + detail::num(kH - 10) +
       "\" text-anchor=\"middle\">roll-outs T</text>\n";
  s += "<text x=\"15\" y=\"" + detail::num(kTop + ph / 2) +
       "\" transform=\"rotate(-90 15 " + detail::num(kTop + ph / 2) +
       ")\" text-anchor=\"middle\">PCS</text>\n";

  for (std::size_t k = 0; k < order.size(); ++k) {
    auto pts = series[order[k]];
    std::stable_sort(pts.begin(), pts.end(), [](const PcsRow* a, const PcsRow* b) {
      return a->rollouts < b->rollouts;
    });
    const std::string color = detail::kPalette[k % std::size(detail::kPalette)];
    s += "<g data-policy=\"" + order[k] + "\" stroke=\"" + color + "\" fill=\"" + color + "\">\n";
    if (pts.size() >= 2) {
      s += "<polyline class=\"series\" fill=\"none\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += detail::num(x(static_cast<double>(pts[i]->rollouts))) + "," +
             detail::num(y(pts[i]->pcs));
      }
      s += "\"/>\n";
    }
    for (const PcsRow* p : pts) {
      const std::string px = detail::num(x(static_cast<double>(p->rollouts)));
      s += "<line class=\"whisker\" x1=\"" + px + "\" y1=\"" +
           detail::num(y(p->pcs - p->stderr_)) + "\" x2=\"" + px + "\" y2=\"" +
           detail::num(y(p->pcs + p->stderr_)) + "\"/>\n";
      s += "<circle class=\"marker\" cx=\"" + px + "\" cy=\"" + detail::num(y(p->pcs)) +
           "\" r=\"2.5\"/>\n";
    }
    const double ly = kTop + 10 + 16.0 * static_cast<double>(k);
    s += "<text stroke=\"none\" x=\"" + detail::num(kLeft + pw + 15) + "\" y=\"" +
         detail::num(ly) + "\">" + order[k] + "</text>\n";
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void emit_plot(const std::vector<PcsRow>& rows, const std::string& path) {
  const std::string svg = render_plot(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << svg;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace aoap
