#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>

#include "setbm/errors.hpp"

namespace setbm {

inline constexpr int kMaxDim = 3;

// Point (or direction) in R^d, d <= 3. Unused slots stay zero so value
// comparisons are independent of the dimension tag.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<double> xs) {
        if (xs.size() == 0 || xs.size() > static_cast<std::size_t>(kMaxDim))
            throw InvalidRange("Vec: dimension must be 1..3");
        dim_ = static_cast<int>(xs.size());
        int i = 0;
        for (double x : xs) c_[i++] = x;
    }

    static Vec zero(int dim) {
        Vec v;
        if (dim < 1 || dim > kMaxDim) throw InvalidRange("Vec: dimension must be 1..3");
        v.dim_ = dim;
        return v;
    }
    static Vec of(double x) { return Vec{x}; }
    static Vec of(double x, double y) { return Vec{x, y}; }
    static Vec of(double x, double y, double z) { return Vec{x, y, z}; }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }

    friend bool operator==(const Vec& a, const Vec& b) {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }

private:
    std::array<double, kMaxDim> c_{0.0, 0.0, 0.0};
    int dim_ = 0;
};

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = Vec::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r = Vec::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator-(const Vec& a) {
    Vec r = Vec::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = -a[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r = Vec::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw InvalidRange("normalized: zero vector");
    return (1.0 / n) * a;
}

// z-component of the 2-D cross product (a x b).
inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.dim(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

inline double dist2_point_segment(const Vec& p, const Vec& a, const Vec& b) {
    Vec ab = b - a;
    double den = norm2(ab);
    if (den == 0.0) return norm2(p - a);
    double t = dot(p - a, ab) / den;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return norm2(p - (a + t * ab));
}

// Closest-point-on-triangle distance (squared); falls back to the edges when
// the triangle is degenerate.
inline double dist2_point_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
    Vec ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return norm2(p - a);
    Vec bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return norm2(p - b);
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double v = d1 / (d1 - d3);
        return norm2(p - (a + v * ab));
    }
    Vec cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return norm2(p - c);
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double w = d2 / (d2 - d6);
        return norm2(p - (a + w * ac));
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return norm2(p - (b + w * (c - b)));
    }
    double denom = va + vb + vc;
    if (!(std::fabs(denom) > 0.0)) {
        double e0 = dist2_point_segment(p, a, b);
        double e1 = dist2_point_segment(p, b, c);
        double e2 = dist2_point_segment(p, a, c);
        return std::fmin(e0, std::fmin(e1, e2));
    }
    double v = vb / denom, w = vc / denom;
    return norm2(p - (a + v * ab + w * ac));
}

}  // namespace setbm
