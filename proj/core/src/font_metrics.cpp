#include "labelforge/font_metrics.hpp"

#include <array>

namespace labelforge {

namespace {

// Times-Roman widths for the printable ASCII range 0x20..0x7e.
constexpr std::array<int, 95> kAsciiWidths = {
    250, 333, 408, 500, 500, 833, 778, 333, 333, 333, 500, 564, 250, 333, 250, 278, // sp ! " # $ % & ' ( ) * + , - . /
    500, 500, 500, 500, 500, 500, 500, 500, 500, 500,                               // 0-9
    278, 278, 564, 564, 564, 444, 921,                                              // : ; < = > ? @
    722, 667, 667, 722, 611, 556, 722, 722, 333, 389, 722, 611, 889,                // A-M
    722, 722, 556, 722, 667, 556, 611, 722, 722, 944, 722, 722, 611,                // N-Z
    333, 278, 333, 469, 500, 333,                                                   // [ \ ] ^ _ `
    444, 500, 444, 500, 444, 333, 500, 500, 278, 278, 500, 278, 778,                // a-m
    500, 500, 500, 500, 333, 389, 278, 500, 500, 722, 500, 500, 444,                // n-z
    480, 200, 480, 541,                                                             // { | } ~
};

constexpr std::array<int, 256> make_table()
{
    std::array<int, 256> t{};
    for (int c = 0; c < 256; ++c) {
        if (c >= 0x20 && c <= 0x7e)
            t[c] = kAsciiWidths[c - 0x20];
        else if (c >= 0xa0)
            t[c] = 500; // Latin-1 upper half, rough average
        else
            t[c] = 0;
    }
    return t;
}

constexpr std::array<int, 256> kWidths = make_table();

} // namespace

int times_roman_advance(unsigned char c) { return kWidths[c]; }

double times_roman_width(std::string_view text, double font_size)
{
    long total = 0;
    for (char c : text)
        total += kWidths[static_cast<unsigned char>(c)];
    return static_cast<double>(total) * font_size / 1000.0;
}

LabelBox estimate_text_box(std::string_view text, double font_size)
{
    return {times_roman_width(text, font_size), font_size, 0.2 * font_size};
}

} // namespace labelforge
