#pragma once

#include "puiseux/polygon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace puiseux {

enum class BranchPolicy { SidesOnly, SidesAndVertexRoots };

struct StepRecord {
    Exponent nu;
    Scalar c;
    bool free = false;      // characteristic polynomial vanished identically
    int multiplicity = 1;
    std::string source;     // "side", "vertex-indicial" or "forced"
    std::string phi;        // rendering of the characteristic polynomial
};

struct BranchState {
    GenSeries prefix;                 // exact generalized polynomial
    Equation state;                   // P[prefix]
    std::optional<Exponent> nu_prev;  // last used exponent
    std::vector<StepRecord> history;
};

struct Extension {
    Exponent nu;
    std::optional<Scalar> c;  // nullopt: free coefficient (Phi identically zero)
    int multiplicity = 1;     // 0 marks the free case
    bool from_side = true;
    std::string phi;
};

struct StepOutcome {
    enum Kind { ExactSolution, Extensions, Obstruction, NeedsExtension, Undecided } kind;
    std::vector<Extension> extensions;
    std::optional<Exponent> obstruction_at;
    std::optional<UniPoly> minimal_polynomial;  // first unresolved factor
    std::string detail;
};

/// One Newton-polygon step: candidate co-slopes above nu_prev from the sides
/// (plus indicial-root candidates from hull vertices under the wider policy),
/// with nonzero characteristic roots as extensions.
StepOutcome newton_step(const Ctx& ctx, const BranchState& b, BranchPolicy policy);

struct Budget {
    int max_terms = 12;
    std::optional<Exponent> max_exponent;
};

enum class BranchVerdict { ExactSolution, BudgetExhausted, Obstruction, NeedsExtension, Undecided };

struct BranchResult {
    BranchState branch;
    BranchVerdict verdict = BranchVerdict::BudgetExhausted;
    std::string detail;
    std::optional<Exponent> residual_order;  // order of the state's y-free part
    std::optional<Exponent> next_exponent;   // first unexplored exponent, if known
};

std::string verdict_render(BranchVerdict v);

struct AdmissibilityStep {
    Exponent nu;
    Scalar c;
    std::string phi;
    Scalar phi_value;
    bool ok = false;
};

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<AdmissibilityStep> steps;
    Equation final_state;
    bool bottom_vertex_ok = false;  // the equivalent polygon characterization
};

/// Necessary-initial-conditions check; evaluates both the per-step criterion
/// and the bottom-vertex characterization and insists they agree.
AdmissibilityReport check_admissible(const Ctx& ctx, const Equation& P, const GenSeries& r);

/// Breadth-first completion of an admissible segment.
std::vector<BranchResult> complete(const Ctx& ctx, const Equation& P, const GenSeries& r,
                                   const Budget& budget, BranchPolicy policy);
std::vector<BranchResult> complete_from(const Ctx& ctx, const BranchState& start,
                                        const Budget& budget, BranchPolicy policy);

struct StabilizationReport {
    bool stabilized = false;
    CloudPoint pivot;
    std::vector<Exponent> sigma;     // representable indicial roots with mu >= 0
    std::string witness;             // failed clause, when any
    std::optional<Exponent> nu_last;
};

StabilizationReport stabilization_check(const Ctx& ctx, const Equation& P, const GenSeries& r);

/// Unique continuation after stabilization: `count` further forced terms (or
/// fewer if the residual vanishes first).
GenSeries stabilized_extend(const Ctx& ctx, const Equation& P, const GenSeries& r, int count);

struct Certificate {
    bool regular = false;
    std::optional<Exponent> lambda;
    std::string detail;
};

/// Order condition on the linearized operator along s (regular singularity).
Certificate convergence_certificate(const Ctx& ctx, const Equation& P, const GenSeries& s);

struct AutonomousResult {
    BranchState branch;
    BranchVerdict verdict = BranchVerdict::ExactSolution;
    Gaussian x0, c0;  // the branch lives in coordinates centered at (x0, c0)
};

/// Puiseux branch of an autonomous first-order d/dx equation through (x0, c0).
AutonomousResult autonomous_first_order(const Ctx& ctx, const Equation& P, const Gaussian& x0,
                                        const Gaussian& c0, const Budget& budget);

/// rank(supp s cup supp P / supp P) <= order.
bool theorem1_audit(const Equation& P, const GenSeries& s, int* rank_out = nullptr);

/// Sign of |q| - 1, decided by enclosure refinement.
Cmp q_modulus_vs_one(const Ctx& ctx, const Scalar& q);

}  // namespace puiseux
