#include "brokenlines/svg.hpp"

#include <algorithm>
#include <sstream>

#include "brokenlines/io.hpp"

namespace brokenlines {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string num(double v) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << v;
  return o.str();
}

}  // namespace

std::string render_lines_svg(const Domain& d, const Decomposition& dec) {
  const double u = 32, pad = 24;
  const int t0 = d.box_t_min(), t1 = d.box_t_max(), x0 = d.box_x_min(), x1 = d.box_x_max();
  const double w = (t1 - t0) * u + 2 * pad, h = (x1 - x0) * u + 2 * pad;
  auto px = [&](Site y) { return std::pair{pad + (y.t - t0) * u, pad + (x1 - y.x) * u}; };
  double wmax = 0;
  for (const auto& l : dec.lines) wmax = std::max(wmax, l.weight);

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
    << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Site& y : d.sites()) {
    auto [cx, cy] = px(y);
    o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"2.5\" fill=\"#444\"/>\n";
  }
  for (const Site& y : d.outer_sites()) {
    auto [cx, cy] = px(y);
    o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy)
      << "\" r=\"2.5\" fill=\"none\" stroke=\"#999\"/>\n";
  }
  for (std::size_t j = 0; j < dec.lines.size(); ++j) {
    const auto& l = dec.lines[j];
    double sw = wmax > 0 ? 1.0 + 7.0 * l.weight / wmax : 1.0;
    o << "<polyline fill=\"none\" stroke-linejoin=\"round\" stroke-opacity=\"0.7\" stroke=\""
      << kPalette[j % 8] << "\" stroke-width=\"" << num(sw) << "\" points=\"";
    for (std::size_t i = 0; i < l.trace.size(); ++i) {
      auto [cx, cy] = px(l.trace.sites()[i]);
      o << (i ? " " : "") << num(cx) << "," << num(cy);
    }
    o << "\"><title>line " << j + 1 << " weight " << format_number(l.weight) << "</title></polyline>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_brick_svg(const BrickDiagram& b) {
  const Domain& d = b.domain();
  const auto& q = b.breakpoints();
  const double total = q.back();
  const double width = 640, row = 28, pad = 24;
  const int x0 = d.box_x_min() + 1, x1 = d.box_x_max() - 1;
  const double h = (x1 - x0 + 1) * row + 2 * pad + 14;
  auto sx = [&](double p) { return pad + (total > 0 ? p / total : 0.0) * width; };
  auto sy = [&](int x) { return pad + (x1 - x) * row; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width + 2 * pad)
    << "\" height=\"" << num(h) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Site& y : d.sites()) {
    double a = b.p({y.t - 1, y.x}), c = b.p({y.t + 1, y.x});
    if (c <= a) continue;
    o << "<rect x=\"" << num(sx(a)) << "\" y=\"" << num(sy(y.x) + 3) << "\" width=\""
      << num(sx(c) - sx(a)) << "\" height=\"" << num(row - 6)
      << "\" fill=\"#f3e3c3\" stroke=\"#7a5230\"><title>(" << y.t << "," << y.x
      << ")</title></rect>\n";
    // face split: where the lower inflow ends and the upper inflow ends
    for (double s : {b.p({y.t, y.x - 1}), b.p({y.t, y.x + 1})})
      if (s > a && s < c)
        o << "<line x1=\"" << num(sx(s)) << "\" x2=\"" << num(sx(s)) << "\" y1=\""
          << num(sy(y.x) + 3) << "\" y2=\"" << num(sy(y.x) + row - 3)
          << "\" stroke=\"#7a5230\" stroke-width=\"0.5\"/>\n";
  }
  const double bottom = sy(x0) + row;
  for (std::size_t j = 0; j < q.size(); ++j)
    o << "<line x1=\"" << num(sx(q[j])) << "\" x2=\"" << num(sx(q[j])) << "\" y1=\"" << num(pad)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"#333\" stroke-dasharray=\"2,3\"/>\n";
  for (std::size_t j = 1; j < q.size(); ++j)
    o << "<text x=\"" << num(0.5 * (sx(q[j - 1]) + sx(q[j]))) << "\" y=\"" << num(bottom + 12)
      << "\" font-size=\"9\" text-anchor=\"middle\">" << j << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace brokenlines
