#pragma once

// SVG pictures: the line configuration of a field (t to the right, x up,
// stroke width proportional to weight) and its brick diagram (one row of
// bricks per x, strips separated by dotted verticals at the breakpoints).

#include <string>

#include "brokenlines/lines.hpp"

namespace brokenlines {

std::string render_lines_svg(const Domain& d, const Decomposition& dec);
std::string render_brick_svg(const BrickDiagram& b);

}  // namespace brokenlines
