#pragma once

#include "puiseux/interval.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace puiseux {

struct Scalar;

enum class SymbolKind { Additive, Multiplicative };

/// How a symbol's enclosure can be tightened on demand.
struct Refiner {
    enum Type { None, PiMultiple, Digits, QPower } type = None;
    Rat factor = 0;                        // PiMultiple: value = factor * pi
    std::string digits;                    // Digits: decimal literal of the value
    std::shared_ptr<const Scalar> qbase;   // QPower: value = qbase ^ exponent_sym
    int qexp_sym = -1;

    static Refiner none() { return {}; }
    static Refiner pi_multiple(Rat f) {
        Refiner r;
        r.type = PiMultiple;
        r.factor = std::move(f);
        return r;
    }
    static Refiner from_digits(std::string d) {
        Refiner r;
        r.type = Digits;
        r.digits = std::move(d);
        return r;
    }
};

struct TranscSymbol {
    std::string name;
    RatInterval enclosure;
    SymbolKind kind = SymbolKind::Additive;
    Refiner refiner;
};

/// Explicit table of declared (and auto-registered) transcendental symbols.
/// Values are immutable once added; the table only grows.
class SymbolTable {
public:
    int add(TranscSymbol s);
    int find(const std::string& name) const;  // -1 if absent
    const TranscSymbol& at(int id) const { return symbols_.at(static_cast<size_t>(id)); }
    size_t size() const { return symbols_.size(); }

    /// Enclosure of symbol `id`, refined to roughly `digits` decimal digits when
    /// the symbol's refiner allows; otherwise the declared enclosure.
    RatInterval enclosure_at(int id, unsigned digits) const;

    /// The auto-registered symbol representing qbase^generator; created once per
    /// (qbase, generator) pair. Defined in scalar.cpp (needs Scalar evaluation).
    int qpow_symbol(const Scalar& qbase, int generator_sym, unsigned digits);

private:
    std::vector<TranscSymbol> symbols_;
    std::map<std::string, int> by_name_;
    std::map<std::pair<std::string, int>, int> qpow_index_;
};

/// Order-decision context: the symbol table plus the refinement budget
/// (number of precision rounds; round k evaluates at 32*k digits).
struct Ctx {
    SymbolTable* syms;
    int budget = 8;

    unsigned digits_at(int round) const { return 32u * static_cast<unsigned>(round); }
};

}  // namespace puiseux
