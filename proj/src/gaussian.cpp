#include "puiseux/gaussian.hpp"

namespace puiseux {

Gaussian gaussian_pow(const Gaussian& a, long e) {
    if (e < 0) return gaussian_pow(a.inverse(), -e);
    Gaussian r(Rat(1));
    Gaussian b = a;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::optional<Gaussian> gaussian_sqrt(const Gaussian& a) {
    if (a.is_zero()) return Gaussian();
    if (a.im == 0) {
        if (a.re > 0) {
            auto r = perfect_sqrt(a.re);
            if (r) return Gaussian(*r);
            return std::nullopt;
        }
        auto r = perfect_sqrt(-a.re);
        if (r) return Gaussian(Rat(0), *r);
        return std::nullopt;
    }
    // (x + y i)^2 = a: x^2 = (re + |a|)/2, y = im / (2x).
    auto n = perfect_sqrt(a.norm2());
    if (!n) return std::nullopt;
    Rat x2 = (a.re + *n) / 2;
    auto x = perfect_sqrt(x2);
    if (!x || *x == 0) return std::nullopt;
    Rat y = a.im / (2 * *x);
    Gaussian root(*x, y);
    if (root * root == a) return root;
    return std::nullopt;
}

std::string gaussian_render(const Gaussian& a) {
    if (a.im == 0) return rat_render(a.re);
    std::string im;
    if (a.im == 1)
        im = "i";
    else if (a.im == -1)
        im = "-i";
    else
        im = rat_render(a.im) + "*i";
    if (a.re == 0) return im;
    if (a.im > 0) return rat_render(a.re) + "+" + im;
    return rat_render(a.re) + im;  // im already carries the minus sign
}

}  // namespace puiseux
