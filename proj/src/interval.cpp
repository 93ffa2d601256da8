#include "puiseux/interval.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace puiseux {

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

RatInterval operator*(const Rat& a, const RatInterval& b) {
    return a >= 0 ? RatInterval{a * b.lo, a * b.hi} : RatInterval{a * b.hi, a * b.lo};
}

RatInterval interval_recip(const RatInterval& a) {
    if (a.contains_zero()) throw DivisionByZero("interval reciprocal across zero");
    return {Rat(1) / a.hi, Rat(1) / a.lo};
}

RatInterval interval_div(const RatInterval& a, const RatInterval& b) {
    return a * interval_recip(b);
}

RatInterval interval_pow_int(const RatInterval& a, long e) {
    if (e == 0) return RatInterval(Rat(1));
    if (e < 0) return interval_recip(interval_pow_int(a, -e));
    Rat plo = rat_pow(a.lo, e), phi = rat_pow(a.hi, e);
    if (e % 2 == 1) return {plo, phi};
    if (a.lo >= 0) return {plo, phi};
    if (a.hi <= 0) return {phi, plo};
    return {Rat(0), std::max(plo, phi)};
}

RatInterval nth_root_interval(const Rat& x, unsigned n, unsigned digits) {
    if (x < 0) throw Error("nth root of a negative rational");
    Int scale = pow10(digits);
    Int scaled = floor_int(x * Rat(ipow(scale, n)));
    Int lo = iroot(scaled, n);
    return {Rat(lo, scale), Rat(lo + 1, scale)};
}

// Outward-rounded x^e for a single positive rational x.
static RatInterval point_pow_rat(const Rat& x, const Rat& e, unsigned digits) {
    if (x <= 0) throw Error("rational power of non-positive base");
    if (rat_den(e) > 1024 || boost::multiprecision::abs(rat_num(e)) > (Int(1) << 20))
        throw EnclosureTooWide("exponent too wild for certified root bounding");
    Int p = rat_num(e);
    unsigned s = static_cast<unsigned>(to_long(rat_den(e)));
    bool neg = p < 0;
    Rat y = rat_pow(x, to_long(neg ? -p : p));
    RatInterval root = s == 1 ? RatInterval(y) : nth_root_interval(y, s, digits);
    if (neg) {
        // y^(1/s) >= min(y, 1) for y > 0 gives a positive lower bound when the
        // scaled floor root collapsed to zero.
        if (root.lo == 0) root.lo = y < 1 ? y : Rat(1);
        root = interval_recip(root);
    }
    return root;
}

RatInterval interval_pow_rat(const RatInterval& a, const Rat& e, unsigned digits) {
    if (is_integer(e)) return interval_pow_int(a, to_long(rat_num(e)));
    if (!a.strictly_positive())
        throw EnclosureTooWide("non-integer power requires a positive enclosure");
    RatInterval l = point_pow_rat(a.lo, e, digits);
    RatInterval h = point_pow_rat(a.hi, e, digits);
    return {std::min(l.lo, h.lo), std::max(l.hi, h.hi)};
}

RatInterval interval_pow_interval(const RatInterval& a, const RatInterval& e, unsigned digits) {
    Rat r1(floor_int(e.lo * 4), 4);
    Rat r2(floor_int(e.hi * 4) + 1, 4);
    RatInterval lo = interval_pow_rat(a, r1, digits);
    RatInterval hi = interval_pow_rat(a, r2, digits);
    return interval_hull(lo, hi);
}

RatInterval interval_intersect(const RatInterval& a, const RatInterval& b) {
    Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw Error("empty interval intersection");
    return {lo, hi};
}

RatInterval interval_hull(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Machin's formula with integer arithmetic; the result carries a conservative
// error bound folded into the returned endpoints.
static Rat pi_lower_raw(unsigned digits, Rat* upper) {
    unsigned guard = 12;
    Int scale = pow10(digits + guard);
    auto atan_inv = [&](long x, long* terms) {
        Int acc = 0;
        Int x2 = Int(x) * x;
        Int term = scale / x;
        long k = 0;
        Int denom_pow = x;
        while (term != 0) {
            acc += (k % 2 == 0) ? term : -term;
            ++k;
            denom_pow *= x2;
            term = scale / (denom_pow * (2 * k + 1));
        }
        *terms = k + 1;
        return acc;
    };
    long k5 = 0, k239 = 0;
    Int v = 16 * atan_inv(5, &k5) - 4 * atan_inv(239, &k239);
    // Each truncated division loses < 1 unit of the scaled value.
    Int err = 16 * k5 + 4 * k239 + 64;
    *upper = Rat(v + err, scale);
    return Rat(v - err, scale);
}

RatInterval pi_interval(unsigned digits) {
    static std::mutex mu;
    static std::map<unsigned, RatInterval> cache;
    unsigned key = std::max(8u, digits);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rat hi;
    Rat lo = pi_lower_raw(key, &hi);
    RatInterval r{lo, hi};
    cache.emplace(key, r);
    return r;
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RatInterval box_norm2(const ComplexBox& a) {
    RatInterval n = interval_pow_int(a.re, 2) + interval_pow_int(a.im, 2);
    if (n.lo < 0) n.lo = 0;
    return n;
}

ComplexBox box_div(const ComplexBox& a, const ComplexBox& b) {
    RatInterval n2 = box_norm2(b);
    if (n2.contains_zero()) throw DivisionByZero("complex box division across zero");
    ComplexBox conj{b.re, -b.im};
    ComplexBox num = a * conj;
    RatInterval inv = interval_recip(n2);
    return {num.re * inv, num.im * inv};
}

std::string interval_render(const RatInterval& a) {
    return "[" + rat_render(a.lo) + ", " + rat_render(a.hi) + "]";
}

std::string decimal_render(const Rat& v, unsigned digits) {
    Int scale = pow10(digits);
    Rat scaled = v * Rat(scale);
    Int rounded = floor_int(scaled + Rat(1, 2));
    bool neg = rounded < 0;
    Int a = neg ? Int(-rounded) : rounded;
    Int ip = a / scale, fp = a % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace puiseux
