#include "puiseux/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace puiseux {

bool operator<(const Monomial& a, const Monomial& b) {
    auto ia = a.exps.begin(), ib = b.exps.begin();
    for (; ia != a.exps.end() && ib != b.exps.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.exps.end() && ib != b.exps.end();
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [id, e] : o.exps) {
        auto it = r.exps.find(id);
        if (it == r.exps.end()) {
            r.exps.emplace(id, e);
        } else {
            it->second += e;
            if (it->second == 0) r.exps.erase(it);
        }
    }
    return r;
}

Monomial Monomial::pow(const Rat& e) const {
    Monomial r;
    if (e == 0) return r;
    for (const auto& [id, x] : exps) r.exps.emplace(id, x * e);
    return r;
}

MonoPoly mp_add(const MonoPoly& a, const MonoPoly& b) {
    MonoPoly r = a;
    for (const auto& [m, c] : b) {
        auto it = r.find(m);
        if (it == r.end()) {
            r.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return r;
}

MonoPoly mp_mul(const MonoPoly& a, const MonoPoly& b) {
    MonoPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma * mb;
            Gaussian c = ca * cb;
            auto it = r.find(m);
            if (it == r.end()) {
                if (!c.is_zero()) r.emplace(std::move(m), c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

MonoPoly mp_neg(const MonoPoly& a) {
    MonoPoly r;
    for (const auto& [m, c] : a) r.emplace(m, -c);
    return r;
}

MonoPoly mp_scale(const MonoPoly& a, const Gaussian& c) {
    MonoPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : a) r.emplace(m, x * c);
    return r;
}

std::optional<MonoPoly> mp_sqrt(const MonoPoly& p) {
    if (p.empty()) return MonoPoly{};
    // Leading (lex-greatest) term must be a square in the coefficient field;
    // monomials always halve since exponents are rational.
    const auto& [lm, lc] = *p.rbegin();
    auto c0 = gaussian_sqrt(lc);
    if (!c0) return std::nullopt;
    Monomial m0 = lm.pow(Rat(1, 2));
    Gaussian two_c0 = *c0 + *c0;
    MonoPoly root{{m0, *c0}};
    size_t cap = p.size() * p.size() + 16;
    for (size_t step = 0; step < cap; ++step) {
        MonoPoly rem = mp_add(p, mp_neg(mp_mul(root, root)));
        if (rem.empty()) return root;
        const auto& [rm, rc] = *rem.rbegin();
        // next term t = rem_lead / (2 * root_lead)
        Monomial tm = rm * m0.pow(Rat(-1));
        Gaussian tc = rc / two_c0;
        root = mp_add(root, MonoPoly{{tm, tc}});
    }
    MonoPoly rem = mp_add(p, mp_neg(mp_mul(root, root)));
    if (rem.empty()) return root;
    return std::nullopt;
}

void Scalar::init_zero() {
    num.clear();
    den.clear();
    den.emplace(Monomial{}, Gaussian(Rat(1)));
}

void Scalar::init_const(const Gaussian& v) {
    init_zero();
    if (!v.is_zero()) num.emplace(Monomial{}, v);
}

Scalar Scalar::from_symbol(int id, const Rat& exp) {
    Monomial m;
    if (exp != 0) m.exps.emplace(id, exp);
    return from_monomial(m);
}

Scalar Scalar::from_monomial(const Monomial& m, const Gaussian& c) {
    Scalar s;
    if (!c.is_zero()) {
        s.num.clear();
        s.num.emplace(m, c);
    }
    s.normalize();
    return s;
}

namespace {

// Dense univariate polynomial over Q(i), used only for the single-symbol
// common-factor reduction below.
using GPoly = std::vector<Gaussian>;

void gp_trim(GPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

GPoly gp_mod(GPoly a, const GPoly& b) {
    Gaussian lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        Gaussian f = a.back() * lead_inv;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = a[off + i] - f * b[i];
        gp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

GPoly gp_divide_exact(const GPoly& a, const GPoly& b) {
    GPoly rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Gaussian());
    Gaussian lead_inv = b.back().inverse();
    while (rem.size() >= b.size()) {
        Gaussian f = rem.back() * lead_inv;
        size_t off = rem.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) rem[off + i] = rem[off + i] - f * b[i];
        gp_trim(rem);
        if (rem.empty()) break;
    }
    if (!rem.empty()) throw Error("inexact univariate division during reduction");
    return q;
}

GPoly gp_gcd(GPoly a, GPoly b) {
    gp_trim(a);
    gp_trim(b);
    while (!b.empty()) {
        GPoly r = gp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Gaussian inv = a.back().inverse();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

}  // namespace

void Scalar::normalize() {
    for (auto it = num.begin(); it != num.end();)
        it = it->second.is_zero() ? num.erase(it) : std::next(it);
    for (auto it = den.begin(); it != den.end();)
        it = it->second.is_zero() ? den.erase(it) : std::next(it);
    if (den.empty()) throw DivisionByZero("scalar with zero denominator");
    if (num.empty()) {
        init_zero();
        return;
    }
    if (num == den) {
        init_const(Gaussian(Rat(1)));
        return;
    }
    reduce_univariate();
    // Joint shift: per symbol, the minimum exponent across numerator and
    // denominator becomes 0.
    std::map<int, Rat> shift;
    auto scan = [&](const MonoPoly& p) {
        for (const auto& [m, c] : p) {
            (void)c;
            for (const auto& [id, e] : m.exps) {
                auto it = shift.find(id);
                if (it == shift.end())
                    shift.emplace(id, e);
                else
                    it->second = std::min(it->second, e);
            }
            // A symbol missing from some monomial has exponent 0 there.
        }
    };
    scan(num);
    scan(den);
    for (auto& [id, mn] : shift) {
        bool everywhere = true;
        auto check = [&](const MonoPoly& p) {
            for (const auto& [m, c] : p) {
                (void)c;
                if (!m.exps.count(id)) everywhere = false;
            }
        };
        check(num);
        check(den);
        if (!everywhere && mn > 0) mn = Rat(0);
    }
    auto apply = [&](MonoPoly& p) {
        MonoPoly out;
        for (const auto& [m, c] : p) {
            Monomial nm = m;
            for (const auto& [id, mn] : shift) {
                if (mn == 0) continue;
                auto it = nm.exps.find(id);
                Rat e = it == nm.exps.end() ? Rat(0) : it->second;
                e -= mn;
                if (it != nm.exps.end()) nm.exps.erase(it);
                if (e != 0) nm.exps.emplace(id, e);
            }
            out.emplace(std::move(nm), c);
        }
        p = std::move(out);
    };
    apply(num);
    apply(den);
    // Scale so the lex-least denominator coefficient is 1.
    Gaussian g = den.begin()->second;
    if (!g.is_one()) {
        Gaussian inv = g.inverse();
        num = mp_scale(num, inv);
        den = mp_scale(den, inv);
    }
}

void Scalar::reduce_univariate() {
    int sym = -1;
    bool multivariate = false;
    auto scan = [&](const MonoPoly& p) {
        for (const auto& [m, c] : p) {
            (void)c;
            for (const auto& [id, e] : m.exps) {
                (void)e;
                if (sym == -1)
                    sym = id;
                else if (sym != id)
                    multivariate = true;
            }
        }
    };
    scan(num);
    scan(den);
    if (multivariate || sym == -1) return;
    if (num.size() == 1 && den.size() == 1) return;  // plain monomial ratio; shift handles

    // common exponent scale: indices (e - emin) * L are non-negative integers
    Rat emin;
    bool first = true;
    Int L = 1;
    auto scan_exps = [&](const MonoPoly& p) {
        for (const auto& [m, c] : p) {
            (void)c;
            Rat e = m.exps.empty() ? Rat(0) : m.exps.begin()->second;
            if (first || e < emin) emin = e;
            first = false;
            if (!m.exps.empty()) L = boost::multiprecision::lcm(L, rat_den(e));
        }
    };
    scan_exps(num);
    scan_exps(den);
    L = boost::multiprecision::lcm(L, rat_den(emin));

    auto to_dense = [&](const MonoPoly& p) {
        GPoly out;
        for (const auto& [m, c] : p) {
            Rat e = m.exps.empty() ? Rat(0) : m.exps.begin()->second;
            Int idx_i = rat_num((e - emin) * Rat(L));
            size_t idx = static_cast<size_t>(to_long(idx_i));
            if (out.size() <= idx) out.resize(idx + 1);
            out[idx] = c;
        }
        return out;
    };
    GPoly dn = to_dense(num), dd = to_dense(den);
    GPoly g = gp_gcd(dn, dd);
    if (g.size() <= 1) return;  // constant gcd: nothing to cancel
    GPoly qn = gp_divide_exact(dn, g), qd = gp_divide_exact(dd, g);
    auto to_poly = [&](const GPoly& p) {
        MonoPoly out;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i].is_zero()) continue;
            Monomial m;
            Rat e(Int(i), L);
            if (e != 0) m.exps.emplace(sym, e);
            out.emplace(std::move(m), p[i]);
        }
        return out;
    };
    num = to_poly(qn);
    den = to_poly(qd);
}

bool Scalar::is_one() const {
    return num.size() == 1 && den.size() == 1 && num.begin()->first == den.begin()->first &&
           num.begin()->second == den.begin()->second;
}

bool Scalar::is_rational() const {
    auto g = as_gaussian();
    return g && g->is_real();
}

std::optional<Rat> Scalar::as_rational() const {
    auto g = as_gaussian();
    if (g && g->is_real()) return g->re;
    return std::nullopt;
}

std::optional<Gaussian> Scalar::as_gaussian() const {
    if (is_zero()) return Gaussian();
    if (num.size() != 1 || den.size() != 1) return std::nullopt;
    if (!num.begin()->first.is_one() || !den.begin()->first.is_one()) return std::nullopt;
    return num.begin()->second / den.begin()->second;
}

std::optional<Monomial> Scalar::as_unit_monomial() const {
    if (num.size() != 1 || den.size() != 1) return std::nullopt;
    if (!den.begin()->first.is_one() || !den.begin()->second.is_one()) return std::nullopt;
    if (!num.begin()->second.is_one()) return std::nullopt;
    return num.begin()->first;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar r;
    r.num = mp_add(mp_mul(a.num, b.den), mp_mul(b.num, a.den));
    r.den = mp_mul(a.den, b.den);
    r.normalize();
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.num = mp_neg(r.num);
    r.normalize();
    return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    r.num = mp_mul(a.num, b.num);
    r.den = mp_mul(a.den, b.den);
    r.normalize();
    return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DivisionByZero("scalar division by zero");
    Scalar r;
    r.num = mp_mul(a.num, b.den);
    r.den = mp_mul(a.den, b.num);
    r.normalize();
    return r;
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar(Rat(1));
    if (e < 0) return Scalar(Rat(1)) / pow(-e);
    Scalar r(Rat(1));
    Scalar b = *this;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

// ---- enclosure evaluation ----

RatInterval SymbolTable::enclosure_at(int id, unsigned digits) const {
    const TranscSymbol& s = at(id);
    switch (s.refiner.type) {
        case Refiner::None:
            return s.enclosure;
        case Refiner::PiMultiple: {
            RatInterval pi = pi_interval(digits);
            RatInterval v = s.refiner.factor * pi;
            return interval_intersect(v, s.enclosure);
        }
        case Refiner::Digits: {
            const std::string& d = s.refiner.digits;
            size_t dot = d.find('.');
            size_t avail = dot == std::string::npos ? 0 : d.size() - dot - 1;
            size_t keep = std::min<size_t>(avail, digits);
            std::string prefix = dot == std::string::npos ? d : d.substr(0, dot + 1 + keep);
            Rat v = rat_from_decimal(prefix);
            Rat eps(1, pow10(static_cast<unsigned>(keep)));
            RatInterval r{v - eps, v + eps};
            return interval_intersect(r, s.enclosure);
        }
        case Refiner::QPower: {
            ComplexBox qb = scalar_eval_at(*s.refiner.qbase, *this, digits);
            if (!qb.is_real() || !qb.re.strictly_positive())
                return s.enclosure;  // cannot tighten; fall back to the declared box
            RatInterval mu = enclosure_at(s.refiner.qexp_sym, digits);
            RatInterval v = interval_pow_interval(qb.re, mu, digits);
            return interval_intersect(v, s.enclosure);
        }
    }
    return s.enclosure;
}

int SymbolTable::add(TranscSymbol s) {
    if (by_name_.count(s.name)) throw SemanticError("duplicate symbol: " + s.name);
    int id = static_cast<int>(symbols_.size());
    by_name_.emplace(s.name, id);
    symbols_.push_back(std::move(s));
    return id;
}

int SymbolTable::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int SymbolTable::qpow_symbol(const Scalar& qbase, int generator_sym, unsigned digits) {
    std::string key = scalar_render(qbase, *this);
    auto it = qpow_index_.find({key, generator_sym});
    if (it != qpow_index_.end()) return it->second;

    ComplexBox qb = scalar_eval_enclosure(qbase, *this, 8);
    if (!qb.is_real() || !qb.re.strictly_positive())
        throw NeedsAlgebraicExtension(
            "q^mu symbols require q with a certified positive real enclosure");
    RatInterval mu = enclosure_at(generator_sym, digits);
    RatInterval enc = interval_pow_interval(qb.re, mu, digits);
    if (enc.contains_zero()) throw EnclosureTooWide("q^mu enclosure touches zero");

    std::string base_name;
    for (char c : key)
        base_name += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    TranscSymbol s;
    s.name = "qpow_" + base_name + "_" + at(generator_sym).name;
    while (by_name_.count(s.name)) s.name += "_";
    s.enclosure = enc;
    s.kind = SymbolKind::Multiplicative;
    s.refiner.type = Refiner::QPower;
    s.refiner.qbase = std::make_shared<Scalar>(qbase);
    s.refiner.qexp_sym = generator_sym;
    int id = add(std::move(s));
    qpow_index_.emplace(std::make_pair(key, generator_sym), id);
    return id;
}

static ComplexBox mp_eval(const MonoPoly& p, const SymbolTable& tab, unsigned digits) {
    ComplexBox acc{RatInterval(Rat(0)), RatInterval(Rat(0))};
    for (const auto& [m, c] : p) {
        RatInterval mono(Rat(1));
        for (const auto& [id, e] : m.exps) {
            RatInterval base = tab.enclosure_at(id, digits);
            mono = mono * interval_pow_rat(base, e, digits);
        }
        ComplexBox term{RatInterval(c.re) * mono, RatInterval(c.im) * mono};
        acc = acc + term;
    }
    return acc;
}

ComplexBox scalar_eval_at(const Scalar& a, const SymbolTable& tab, unsigned digits) {
    ComplexBox d = mp_eval(a.den, tab, digits);
    if (box_norm2(d).contains_zero())
        throw EnclosureTooWide("denominator enclosure not separated from zero");
    ComplexBox n = mp_eval(a.num, tab, digits);
    return box_div(n, d);
}

ComplexBox scalar_eval_enclosure(const Scalar& a, const SymbolTable& tab, int max_rounds) {
    for (int round = 1; round <= std::max(1, max_rounds); ++round) {
        try {
            return scalar_eval_at(a, tab, 32u * static_cast<unsigned>(round));
        } catch (const EnclosureTooWide&) {
            if (round == std::max(1, max_rounds)) throw;
        }
    }
    throw EnclosureTooWide("denominator enclosure not separated from zero");
}

std::optional<Scalar> scalar_sqrt(const Scalar& a) {
    if (a.is_zero()) return Scalar();
    auto n = mp_sqrt(a.num);
    if (n) {
        auto d = mp_sqrt(a.den);
        if (d) {
            Scalar r;
            r.num = *n;
            r.den = *d;
            r.normalize();
            return r;
        }
    }
    // a = (num*den)/den^2, so one square root in the numerator may suffice.
    auto nd = mp_sqrt(mp_mul(a.num, a.den));
    if (nd) {
        Scalar r;
        r.num = *nd;
        r.den = a.den;
        r.normalize();
        return r;
    }
    return std::nullopt;
}

// ---- rendering ----

static std::string mono_render(const Monomial& m, const SymbolTable& tab) {
    std::string out;
    for (const auto& [id, e] : m.exps) {
        if (!out.empty()) out += "*";
        out += tab.at(id).name;
        if (e != 1) {
            if (is_integer(e) && e > 0)
                out += "^" + rat_render(e);
            else
                out += "^(" + rat_render(e) + ")";
        }
    }
    return out;
}

static std::string mp_render(const MonoPoly& p, const SymbolTable& tab) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p) {
        Gaussian coeff = c;
        std::string connector;
        if (first) {
            connector = "";
        } else if (coeff.is_real() && coeff.re < 0) {
            connector = " - ";
            coeff = -coeff;
        } else {
            connector = " + ";
        }
        std::string cs = gaussian_render(coeff);
        if (!coeff.is_real() && !first) cs = "(" + cs + ")";
        std::string ms = mono_render(m, tab);
        std::string term;
        if (ms.empty())
            term = cs;
        else if (coeff.is_one())
            term = ms;
        else if (coeff.is_real() && coeff.re == -1 && first)
            term = "-" + ms;
        else
            term = cs + "*" + ms;
        out += connector + term;
        first = false;
    }
    return out;
}

static bool mp_is_single_term(const MonoPoly& p) { return p.size() == 1; }

std::string scalar_render(const Scalar& a, const SymbolTable& tab) {
    if (a.is_zero()) return "0";
    bool trivial_den = a.den.size() == 1 && a.den.begin()->first.is_one() &&
                       a.den.begin()->second.is_one();
    if (trivial_den) return mp_render(a.num, tab);
    std::string n = mp_render(a.num, tab);
    std::string d = mp_render(a.den, tab);
    if (!mp_is_single_term(a.num)) n = "(" + n + ")";
    if (!mp_is_single_term(a.den) || a.den.begin()->first.exps.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

std::string scalar_render_factor(const Scalar& a, const SymbolTable& tab) {
    std::string s = scalar_render(a, tab);
    bool needs_parens = false;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '/' || (c == '-' && i > 0))) needs_parens = true;
    }
    if (!s.empty() && s[0] == '-') needs_parens = true;
    return needs_parens ? "(" + s + ")" : s;
}

}  // namespace puiseux
