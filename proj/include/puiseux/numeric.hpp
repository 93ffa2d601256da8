#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace puiseux {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error { using Error::Error; };
struct EnclosureTooWide : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };
struct OrderUndecidable : Error { using Error::Error; };
struct OrdOfZero : Error { using Error::Error; };
struct EmptyCloud : Error { using Error::Error; };
struct NeedsAlgebraicExtension : Error { using Error::Error; };
struct SemanticError : Error { using Error::Error; };

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int floor_int(const Rat& r) {
    Int q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

inline long to_long(const Int& v) {
    if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
        throw Error("integer too large for machine word");
    return static_cast<long>(v);
}

inline Int pow10(unsigned n) {
    Int r = 1;
    Int b = 10;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

Int ipow(Int base, unsigned e);

/// floor(x^(1/n)) for x >= 0, n >= 1.
Int iroot(const Int& x, unsigned n);

/// Exact square root of a non-negative integer, if it is a perfect square.
std::optional<Int> perfect_isqrt(const Int& x);

/// Exact square root of a non-negative rational, if it exists in Q.
std::optional<Rat> perfect_sqrt(const Rat& x);

Rat rat_pow(const Rat& base, long e);  // throws DivisionByZero on 0^negative

/// Exact conversion of a decimal literal such as "1.5707963267948966" or "-3".
Rat rat_from_decimal(const std::string& text);

std::string rat_render(const Rat& r);

}  // namespace puiseux
