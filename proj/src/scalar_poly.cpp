#include "puiseux/scalar_poly.hpp"

namespace puiseux {

const Scalar& UniPoly::coeff(size_t k) const {
    static const Scalar zero;
    return k < c.size() ? c[k] : zero;
}

Scalar UniPoly::eval(const Scalar& x) const {
    Scalar acc;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Scalar> r(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Scalar> r(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Scalar> r(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Scalar& s) const {
    std::vector<Scalar> r;
    r.reserve(c.size());
    for (const auto& x : c) r.push_back(x * s);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly r = UniPoly::constant(Scalar(Rat(1)));
    UniPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

UniPoly UniPoly::deflate(const Scalar& r) const {
    if (is_zero()) throw ZeroPolynomial("deflating the zero polynomial");
    std::vector<Scalar> q(c.size() - 1);
    Scalar carry;
    for (size_t i = c.size(); i-- > 1;) {
        carry = c[i] + carry * r;
        q[i - 1] = carry;
    }
    Scalar rem = c[0] + carry * r;
    if (!rem.is_zero()) throw Error("deflation by a non-root");
    return UniPoly(std::move(q));
}

RootList poly_roots_exact(const UniPoly& p) {
    UniPoly q = p;
    q.trim();
    if (q.is_zero()) throw ZeroPolynomial("root extraction on the zero polynomial");
    RootList out;

    // (i) deflate X = 0
    size_t t = 0;
    while (t < q.c.size() && q.c[t].is_zero()) ++t;
    if (t > 0) {
        out.roots.emplace_back(Scalar(), static_cast<int>(t));
        q.c.erase(q.c.begin(), q.c.begin() + static_cast<long>(t));
    }
    int d = q.degree();
    if (d <= 0) return out;

    // (ii) pure power c*(X - r)^d, detected from the subleading coefficient
    if (d >= 2) {
        Scalar r = -(q.c[static_cast<size_t>(d) - 1] / (Scalar(Rat(d)) * q.c.back()));
        if (!r.is_zero()) {
            UniPoly probe = UniPoly::linear(Scalar(Rat(1)), -r).pow(static_cast<unsigned>(d))
                                .scaled(q.c.back());
            if (probe == q) {
                out.roots.emplace_back(r, d);
                return out;
            }
        }
    }

    // (iii) degree 1
    if (d == 1) {
        out.roots.emplace_back(-(q.c[0] / q.c[1]), 1);
        return out;
    }

    // (iv) degree 2 with perfect-square discriminant
    if (d == 2) {
        Scalar disc = q.c[1] * q.c[1] - Scalar(Rat(4)) * q.c[0] * q.c[2];
        auto s = scalar_sqrt(disc);
        if (s) {
            Scalar two_a = Scalar(Rat(2)) * q.c[2];
            Scalar r1 = (-q.c[1] + *s) / two_a;
            Scalar r2 = (-q.c[1] - *s) / two_a;
            if (r1 == r2) {
                out.roots.emplace_back(r1, 2);
            } else {
                out.roots.emplace_back(r1, 1);
                out.roots.emplace_back(r2, 1);
            }
            return out;
        }
    }

    out.unresolved = q;
    return out;
}

std::string poly_render(const UniPoly& p, const SymbolTable& tab, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i].is_zero()) continue;
        std::string term;
        if (i == 0) {
            term = scalar_render_factor(p.c[i], tab);
        } else {
            std::string pow = i == 1 ? var : var + "^" + std::to_string(i);
            term = p.c[i].is_one() ? pow : scalar_render_factor(p.c[i], tab) + "*" + pow;
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace puiseux
