#pragma once

#include "puiseux/dsl.hpp"

#include <string>
#include <vector>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace puiseux {

using Json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data);

Json exponent_json(const Exponent& e, const SymbolTable& tab);
Json series_json(const GenSeries& s, const SymbolTable& tab);
Json equation_json(const Equation& P, const SymbolTable& tab);
Json branch_json(const Ctx& ctx, const BranchResult& r);
Json admissibility_json(const Ctx& ctx, const AdmissibilityReport& rep);
Json stabilization_json(const Ctx& ctx, const StabilizationReport& rep);
Json certificate_json(const Ctx& ctx, const Certificate& cert);

/// Common envelope: version, command, input digest, budgets, timing.
Json run_report(const std::string& command, const std::string& input_text,
                const Problem& p, long timing_ms);

}  // namespace puiseux
