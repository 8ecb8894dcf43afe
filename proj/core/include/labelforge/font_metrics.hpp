#pragma once

#include "labelforge/geometry.hpp"

#include <string_view>

namespace labelforge {

inline constexpr double kDefaultFontSize = 10.0;

// Advance width of one byte in Times-Roman, 1/1000 em.
int times_roman_advance(unsigned char c);

// Width of text set in Times-Roman at font_size points.
double times_roman_width(std::string_view text, double font_size);

// Box estimate for text shown in Times-Roman: measured width, height equal to
// the font size, baseline at 0.2 * font size above the bottom.
LabelBox estimate_text_box(std::string_view text, double font_size);

} // namespace labelforge
