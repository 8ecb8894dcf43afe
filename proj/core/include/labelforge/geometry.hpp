#pragma once

#include <cmath>
#include <numbers>

namespace labelforge {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;

    double norm() const { return std::hypot(x, y); }
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Maps an angle in degrees into (-180, 180].
inline double normalize_degrees(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r <= -180.0)
        r += 360.0;
    else if (r > 180.0)
        r -= 360.0;
    return r;
}

// 2x3 affine matrix in PostScript order:
//   x' = a*x + c*y + e
//   y' = b*x + d*y + f
struct Affine {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0, e = 0.0, f = 0.0;

    static Affine identity() { return {}; }
    static Affine translation(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static Affine scaling(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
    static Affine rotation(double degrees)
    {
        const double r = deg_to_rad(degrees);
        const double cs = std::cos(r);
        const double sn = std::sin(r);
        return {cs, sn, -sn, cs, 0, 0};
    }

    Vec2 apply(Vec2 p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
    Vec2 apply_linear(Vec2 v) const { return {a * v.x + c * v.y, b * v.x + d * v.y}; }

    double determinant() const { return a * d - b * c; }

    // Angle of the transformed x axis, degrees in (-180, 180].
    double x_axis_degrees() const { return normalize_degrees(rad_to_deg(std::atan2(b, a))); }
    double x_axis_scale() const { return std::hypot(a, b); }

    // Inverse; caller guarantees the matrix is not singular.
    Affine inverse() const
    {
        const double det = determinant();
        const double ia = d / det;
        const double ib = -b / det;
        const double ic = -c / det;
        const double id = a / det;
        return {ia, ib, ic, id, -(ia * e + ic * f), -(ib * e + id * f)};
    }

    friend bool operator==(const Affine&, const Affine&) = default;
};

// (outer * inner)(p) == outer(inner(p))
inline Affine operator*(const Affine& outer, const Affine& inner)
{
    return {
        outer.a * inner.a + outer.c * inner.b,
        outer.b * inner.a + outer.d * inner.b,
        outer.a * inner.c + outer.c * inner.d,
        outer.b * inner.c + outer.d * inner.d,
        outer.a * inner.e + outer.c * inner.f + outer.e,
        outer.b * inner.e + outer.d * inner.f + outer.f,
    };
}

// Box of a typeset label. The frame origin is the bottom-left corner and the
// baseline sits at y = depth.
struct LabelBox {
    double width = 0.0;
    double height = 0.0;
    double depth = 0.0;
};

} // namespace labelforge
