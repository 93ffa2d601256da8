#include "puiseux/numeric.hpp"

namespace puiseux {

Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Int iroot(const Int& x, unsigned n) {
    if (x < 0) throw Error("iroot of negative value");
    if (n == 0) throw Error("iroot with n = 0");
    if (x == 0 || x == 1 || n == 1) return x;
    // Newton iteration on integers, seeded above the root; stop as soon as the
    // sequence fails to decrease (it then brackets the floor root).
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    Int guess = Int(1) << (bits / n + 1);
    while (true) {
        Int next = ((n - 1) * guess + x / ipow(guess, n - 1)) / n;
        if (next >= guess) break;
        guess = next;
    }
    while (ipow(guess, n) > x) --guess;
    while (ipow(guess + 1, n) <= x) ++guess;
    return guess;
}

std::optional<Int> perfect_isqrt(const Int& x) {
    if (x < 0) return std::nullopt;
    Int r = iroot(x, 2);
    if (r * r == x) return r;
    return std::nullopt;
}

std::optional<Rat> perfect_sqrt(const Rat& x) {
    if (x < 0) return std::nullopt;
    auto n = perfect_isqrt(rat_num(x));
    if (!n) return std::nullopt;
    auto d = perfect_isqrt(rat_den(x));
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw DivisionByZero("0 raised to a negative power");
        return Rat(0);
    }
    unsigned a = static_cast<unsigned>(e < 0 ? -e : e);
    Rat r(ipow(rat_num(base), a), ipow(rat_den(base), a));
    if (e < 0) r = Rat(1) / r;
    return r;
}

Rat rat_from_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    Int num = 0;
    unsigned frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw Error("malformed decimal literal: " + text);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw Error("malformed decimal literal: " + text);
        }
    }
    if (!seen_digit) throw Error("malformed decimal literal: " + text);
    Rat r(num, pow10(frac_digits));
    return neg ? -r : r;
}

std::string rat_render(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

}  // namespace puiseux
