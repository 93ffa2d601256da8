#include "puiseux/report.hpp"

#include <array>
#include <cstdint>
#include <cstring>

namespace puiseux {

// ---- SHA-256 (FIPS 180-4), self-contained ----

namespace {

constexpr std::array<uint32_t, 64> kRound = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

std::string sha256_hex(const std::string& data) {
    std::array<uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::string msg = data;
    uint64_t bitlen = static_cast<uint64_t>(msg.size()) * 8;
    msg += static_cast<char>(0x80);
    while (msg.size() % 64 != 56) msg += '\0';
    for (int i = 7; i >= 0; --i) msg += static_cast<char>((bitlen >> (8 * i)) & 0xff);

    for (size_t off = 0; off < msg.size(); off += 64) {
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (static_cast<uint32_t>(static_cast<unsigned char>(msg[off + 4 * i])) << 24) |
                   (static_cast<uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 1])) << 16) |
                   (static_cast<uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 2])) << 8) |
                   static_cast<uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 3]));
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
        uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + S1 + ch + kRound[static_cast<size_t>(i)] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (uint32_t v : h)
        for (int i = 7; i >= 0; --i) out += hex[(v >> (4 * i)) & 0xf];
    return out;
}

// ---- JSON views ----

Json exponent_json(const Exponent& e, const SymbolTable& tab) {
    Json j;
    j["rational"] = rat_render(e.rat);
    Json irr = Json::object();
    for (const auto& [id, q] : e.irr) irr[tab.at(id).name] = rat_render(q);
    j["irr"] = irr;
    j["text"] = exponent_render(e, tab);
    return j;
}

Json series_json(const GenSeries& s, const SymbolTable& tab) {
    Json j;
    Json terms = Json::array();
    for (const auto& t : s.terms) {
        Json term;
        term["exp"] = exponent_json(t.exp, tab);
        term["coeff"] = scalar_render(t.coeff, tab);
        terms.push_back(std::move(term));
    }
    j["terms"] = terms;
    j["valid_to"] = s.valid_to ? Json(exponent_render(*s.valid_to, tab)) : Json(nullptr);
    j["text"] = series_render(s, tab);
    return j;
}

Json equation_json(const Equation& P, const SymbolTable& tab) {
    Json j;
    j["order"] = P.order;
    j["operator"] = operator_render(P.op, tab);
    Json coeffs = Json::object();
    for (const auto& [rho, f] : P.coeffs) {
        std::string key;
        for (size_t i = 0; i < rho.size(); ++i) key += (i ? "," : "") + std::to_string(rho[i]);
        coeffs["[" + key + "]"] = series_json(f, tab);
    }
    j["coeffs"] = coeffs;
    return j;
}

Json branch_json(const Ctx& ctx, const BranchResult& r) {
    const SymbolTable& tab = *ctx.syms;
    Json j;
    j["outcome"] = verdict_render(r.verdict);
    j["detail"] = r.detail;
    j["prefix"] = series_json(r.branch.prefix, tab);
    j["residual_order"] =
        r.residual_order ? Json(exponent_render(*r.residual_order, tab)) : Json(nullptr);
    j["next_exponent"] =
        r.next_exponent ? Json(exponent_render(*r.next_exponent, tab)) : Json(nullptr);
    Json steps = Json::array();
    for (const auto& s : r.branch.history) {
        Json step;
        step["nu"] = exponent_render(s.nu, tab);
        step["coeff"] = scalar_render(s.c, tab);
        step["free"] = s.free;
        step["multiplicity"] = s.multiplicity;
        step["source"] = s.source;
        step["phi"] = s.phi;
        steps.push_back(std::move(step));
    }
    j["steps"] = steps;
    return j;
}

Json admissibility_json(const Ctx& ctx, const AdmissibilityReport& rep) {
    const SymbolTable& tab = *ctx.syms;
    Json j;
    j["admissible"] = rep.admissible;
    j["bottom_vertex_ok"] = rep.bottom_vertex_ok;
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
        Json step;
        step["nu"] = exponent_render(s.nu, tab);
        step["coeff"] = scalar_render(s.c, tab);
        step["phi"] = s.phi;
        step["phi_value"] = scalar_render(s.phi_value, tab);
        step["ok"] = s.ok;
        steps.push_back(std::move(step));
    }
    j["steps"] = steps;
    return j;
}

Json stabilization_json(const Ctx& ctx, const StabilizationReport& rep) {
    const SymbolTable& tab = *ctx.syms;
    Json j;
    j["stabilized"] = rep.stabilized;
    Json pivot;
    pivot["alpha"] = exponent_render(rep.pivot.alpha, tab);
    pivot["height"] = rep.pivot.height;
    j["pivot"] = pivot;
    Json sigma = Json::array();
    for (const auto& s : rep.sigma) sigma.push_back(exponent_render(s, tab));
    j["sigma"] = sigma;
    if (!rep.witness.empty()) j["witness"] = rep.witness;
    return j;
}

Json certificate_json(const Ctx& ctx, const Certificate& cert) {
    Json j;
    j["certified"] = cert.regular;
    j["kind"] = cert.regular ? "regular_singular" : "not_certified";
    j["lambda"] = cert.lambda ? Json(exponent_render(*cert.lambda, *ctx.syms)) : Json(nullptr);
    j["detail"] = cert.detail;
    return j;
}

Json run_report(const std::string& command, const std::string& input_text, const Problem& p,
                long timing_ms) {
    Json j;
    j["tool"] = "puiseux";
    j["version"] = "1";
    j["command"] = command;
    j["input_digest"] = "sha256:" + sha256_hex(input_text);
    j["operator"] = operator_render(p.op, p.syms);
    j["order"] = p.equation.order;
    Json budget;
    budget["terms"] = p.budget.max_terms;
    budget["exponent"] = p.budget.max_exponent
                             ? Json(exponent_render(*p.budget.max_exponent, p.syms))
                             : Json(nullptr);
    j["budget"] = budget;
    j["policy"] = p.policy == Policy::SidesOnly ? "sides_only" : "sides_and_vertex_roots";
    j["timing_ms"] = timing_ms;
    return j;
}

}  // namespace puiseux
