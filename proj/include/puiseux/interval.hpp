#pragma once

#include "puiseux/numeric.hpp"

#include <string>

namespace puiseux {

/// Closed interval with rational endpoints.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat v) : lo(v), hi(v) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("interval endpoints out of order");
    }

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rat& a, const RatInterval& b);

/// Reciprocal; the argument must not contain zero.
RatInterval interval_recip(const RatInterval& a);
RatInterval interval_div(const RatInterval& a, const RatInterval& b);
RatInterval interval_pow_int(const RatInterval& a, long e);

/// a^e for rational e, with outward rounding to `digits` decimal places.
/// Non-integer exponents require a strictly positive base interval.
RatInterval interval_pow_rat(const RatInterval& a, const Rat& e, unsigned digits);

/// a^e over an exponent interval; the exponent endpoints are coarsened to
/// quarter integers so root extraction stays cheap.
RatInterval interval_pow_interval(const RatInterval& a, const RatInterval& e, unsigned digits);

RatInterval interval_intersect(const RatInterval& a, const RatInterval& b);  // throws if empty
RatInterval interval_hull(const RatInterval& a, const RatInterval& b);

/// [lo, hi] enclosing pi with width < 10^-digits.
RatInterval pi_interval(unsigned digits);

/// Outward-rounded enclosure of x^(1/n) for x >= 0.
RatInterval nth_root_interval(const Rat& x, unsigned n, unsigned digits);

/// Rectangular complex interval.
struct ComplexBox {
    RatInterval re, im;

    ComplexBox() = default;
    ComplexBox(RatInterval r) : re(std::move(r)), im(Rat(0)) {}
    ComplexBox(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_real() const { return im.lo == 0 && im.hi == 0; }
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);

/// |z|^2 as a real interval (clamped at zero from below).
RatInterval box_norm2(const ComplexBox& a);

/// a / b; requires |b|^2 to exclude zero.
ComplexBox box_div(const ComplexBox& a, const ComplexBox& b);

std::string interval_render(const RatInterval& a);

/// Decimal rendering of the midpoint with the given number of fraction digits
/// (used for deterministic SVG/ASCII coordinates).
std::string decimal_render(const Rat& v, unsigned digits);

}  // namespace puiseux
