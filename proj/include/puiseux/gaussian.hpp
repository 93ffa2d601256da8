#pragma once

#include "puiseux/numeric.hpp"

#include <optional>
#include <string>

namespace puiseux {

/// Element of Q(i): re + im*i with reduced rational components.
struct Gaussian {
    Rat re, im;

    Gaussian() : re(0), im(0) {}
    Gaussian(Rat r) : re(std::move(r)), im(0) {}
    Gaussian(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    Rat norm2() const { return re * re + im * im; }

    Gaussian inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero Gaussian rational");
        Rat n = norm2();
        return {re / n, -im / n};
    }

    friend Gaussian operator/(const Gaussian& a, const Gaussian& b) { return a * b.inverse(); }

    /// Deterministic total order (componentwise), used for canonical scaling.
    friend bool operator<(const Gaussian& a, const Gaussian& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

Gaussian gaussian_pow(const Gaussian& a, long e);

/// Square root within Q(i), when it exists.
std::optional<Gaussian> gaussian_sqrt(const Gaussian& a);

/// Renders e.g. "3", "-1/2", "i", "-i", "2*i", "1+2*i".
std::string gaussian_render(const Gaussian& a);

}  // namespace puiseux
