#include "puiseux/exponent.hpp"

#include <algorithm>
#include <set>

namespace puiseux {

Exponent Exponent::generator(int sym, Rat coeff) {
    Exponent e;
    if (coeff != 0) e.irr.emplace(sym, std::move(coeff));
    return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
    Exponent r = a;
    r.rat += b.rat;
    for (const auto& [id, q] : b.irr) {
        auto it = r.irr.find(id);
        if (it == r.irr.end()) {
            r.irr.emplace(id, q);
        } else {
            it->second += q;
            if (it->second == 0) r.irr.erase(it);
        }
    }
    return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent operator-(const Exponent& a) {
    Exponent r;
    r.rat = -a.rat;
    for (const auto& [id, q] : a.irr) r.irr.emplace(id, -q);
    return r;
}

Exponent Exponent::scaled(const Rat& r) const {
    Exponent out;
    if (r == 0) return out;
    out.rat = rat * r;
    for (const auto& [id, q] : irr) out.irr.emplace(id, q * r);
    return out;
}

bool exponent_key_less(const Exponent& a, const Exponent& b) {
    if (a.rat != b.rat) return a.rat < b.rat;
    auto ia = a.irr.begin(), ib = b.irr.begin();
    for (; ia != a.irr.end() && ib != b.irr.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.irr.end() && ib != b.irr.end();
}

RatInterval exponent_enclosure(const Exponent& a, const SymbolTable& tab, unsigned digits) {
    RatInterval acc(a.rat);
    for (const auto& [id, q] : a.irr) acc = acc + q * tab.enclosure_at(id, digits);
    return acc;
}

Cmp exponent_compare(const Exponent& a, const Exponent& b, const Ctx& ctx) {
    if (a == b) return Cmp::Equal;
    Exponent d = a - b;
    if (d.irr.empty()) return d.rat < 0 ? Cmp::Less : Cmp::Greater;
    bool refinable = false;
    for (const auto& [id, q] : d.irr) {
        (void)q;
        if (ctx.syms->at(id).refiner.type != Refiner::None) refinable = true;
    }
    int rounds = std::max(1, ctx.budget);
    for (int round = 1; round <= rounds; ++round) {
        RatInterval v = exponent_enclosure(d, *ctx.syms, ctx.digits_at(round));
        if (v.strictly_positive()) return Cmp::Greater;
        if (v.strictly_negative()) return Cmp::Less;
        if (!refinable) break;  // no refiner can tighten this any further
    }
    throw OrderUndecidable("cannot separate exponents within the precision budget");
}

bool exp_less(const Exponent& a, const Exponent& b, const Ctx& ctx) {
    return exponent_compare(a, b, ctx) == Cmp::Less;
}

bool exp_less_eq(const Exponent& a, const Exponent& b, const Ctx& ctx) {
    return exponent_compare(a, b, ctx) != Cmp::Greater;
}

const Exponent& exp_min(const Exponent& a, const Exponent& b, const Ctx& ctx) {
    return exp_less_eq(a, b, ctx) ? a : b;
}

Scalar exponent_to_scalar(const Exponent& a) {
    Scalar s(a.rat);
    for (const auto& [id, q] : a.irr)
        s = s + Scalar::from_monomial(Monomial{{{id, Rat(1)}}}, Gaussian(q));
    return s;
}

std::optional<Exponent> scalar_to_exponent(const Scalar& s, const SymbolTable& tab) {
    if (s.is_zero()) return Exponent();
    if (!(s.den.size() == 1 && s.den.begin()->first.is_one())) return std::nullopt;
    Gaussian dc = s.den.begin()->second;
    Exponent out;
    for (const auto& [m, c] : s.num) {
        Gaussian g = c / dc;
        if (!g.is_real()) return std::nullopt;
        if (m.is_one()) {
            out.rat = g.re;
            continue;
        }
        if (m.exps.size() != 1) return std::nullopt;
        const auto& [id, e] = *m.exps.begin();
        if (e != 1) return std::nullopt;
        if (tab.at(id).kind != SymbolKind::Additive) return std::nullopt;
        out.irr.emplace(id, g.re);
    }
    return out;
}

// Gaussian elimination over Q on coordinate vectors (1 and each generator).
static int rank_of_rows(std::vector<std::vector<Rat>> rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    int rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

static std::vector<std::vector<Rat>> coordinate_rows(const std::vector<Exponent>& vs,
                                                     const std::vector<int>& gens) {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(vs.size());
    for (const auto& v : vs) {
        std::vector<Rat> row(gens.size() + 1, Rat(0));
        row[0] = v.rat;
        for (const auto& [id, q] : v.irr) {
            auto it = std::find(gens.begin(), gens.end(), id);
            row[1 + static_cast<size_t>(it - gens.begin())] = q;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

static std::vector<int> all_generators(const std::vector<Exponent>& a,
                                       const std::vector<Exponent>& b) {
    std::set<int> ids;
    for (const auto& v : a)
        for (const auto& [id, q] : v.irr) (void)q, ids.insert(id);
    for (const auto& v : b)
        for (const auto& [id, q] : v.irr) (void)q, ids.insert(id);
    return {ids.begin(), ids.end()};
}

int rational_rank(const std::vector<Exponent>& vs) {
    auto gens = all_generators(vs, {});
    return rank_of_rows(coordinate_rows(vs, gens));
}

int rational_rank_quotient(const std::vector<Exponent>& num, const std::vector<Exponent>& den) {
    auto gens = all_generators(num, den);
    std::vector<Exponent> joint = den;
    joint.insert(joint.end(), num.begin(), num.end());
    int joint_rank = rank_of_rows(coordinate_rows(joint, gens));
    int den_rank = rank_of_rows(coordinate_rows(den, gens));
    return joint_rank - den_rank;
}

std::string exponent_render(const Exponent& a, const SymbolTable& tab) {
    std::string out;
    if (a.rat != 0 || a.irr.empty()) out = rat_render(a.rat);
    for (const auto& [id, q] : a.irr) {
        std::string term = q == 1 ? tab.at(id).name
                                  : (q == -1 ? "-" + tab.at(id).name
                                             : rat_render(q) + "*" + tab.at(id).name);
        if (out.empty()) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

}  // namespace puiseux
