#include "puiseux/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace puiseux;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUndecided = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << data;
}

int precision_budget_from_env() {
    const char* v = std::getenv("PUISEUX_PRECISION_BUDGET");
    if (!v) return 8;
    int n = std::atoi(v);
    return n > 0 ? n : 8;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

struct Common {
    std::string file;
    std::string json_out;
};

void emit(const Common& c, const Json& report) {
    std::string text = report.dump(2) + "\n";
    if (!c.json_out.empty())
        write_output(c.json_out, text);
    else
        std::cout << text;
}

int verdict_exit(const std::vector<BranchResult>& results) {
    bool surviving = false, undecided = false, needs_ext = false;
    for (const auto& r : results) {
        if (r.verdict == BranchVerdict::ExactSolution ||
            r.verdict == BranchVerdict::BudgetExhausted)
            surviving = true;
        if (r.verdict == BranchVerdict::Undecided) undecided = true;
        if (r.verdict == BranchVerdict::NeedsExtension) needs_ext = true;
    }
    if (surviving) return kExitOk;
    if (needs_ext || undecided) return kExitUndecided;
    return kExitNegative;
}

int cmd_branches(const Common& c, std::optional<int> terms, const std::string& exponent_cap,
                 const std::string& policy) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    if (terms) p.budget.max_terms = *terms;
    if (!exponent_cap.empty()) {
        GenSeries cap = parse_series_literal(p, "x^(" + exponent_cap + ")", ctx.budget);
        p.budget.max_exponent = cap.terms.at(0).exp;
    }
    if (policy == "sides_only") p.policy = Policy::SidesOnly;
    if (policy == "sides_and_vertex_roots") p.policy = Policy::SidesAndVertexRoots;

    GenSeries segment = p.segment.value_or(GenSeries{});
    auto results = complete(ctx, p.equation, segment, p.budget, to_branch_policy(p.policy));

    Json report = run_report("branches", text, p, elapsed_ms(t0));
    Json branches = Json::array();
    for (const auto& r : results) {
        Json b = branch_json(ctx, r);
        int rank = 0;
        bool ok = theorem1_audit(p.equation, r.branch.prefix, &rank);
        b["certificates"] = Json{{"rank", rank}, {"rank_bound", p.equation.order},
                                 {"rank_bound_ok", ok}};
        branches.push_back(std::move(b));
    }
    report["branches"] = branches;
    emit(c, report);
    return verdict_exit(results);
}

int cmd_admissible(const Common& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    if (!p.segment) throw SemanticError("admissible requires a segment statement");
    AdmissibilityReport rep = check_admissible(ctx, p.equation, *p.segment);
    Json report = run_report("admissible", text, p, elapsed_ms(t0));
    report["admissibility"] = admissibility_json(ctx, rep);
    emit(c, report);
    return rep.admissible ? kExitOk : kExitNegative;
}

int cmd_polygon(const Common& c, const std::string& at, const std::string& svg_out, bool ascii,
                const std::vector<std::string>& mus, const std::string& dump_state) {
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    Equation state = p.equation;
    if (!at.empty()) {
        GenSeries prefix = parse_series_literal(p, at, ctx.budget);
        AdmissibilityReport rep = check_admissible(ctx, p.equation, prefix);
        if (!rep.admissible) throw SemanticError("prefix is not admissible");
        state = rep.final_state;
    }
    if (!dump_state.empty())
        write_output(dump_state, equation_json(state, p.syms).dump(2) + "\n");
    Cloud cloud = build_cloud(ctx, state);
    NewtonPolygon poly = build_polygon(ctx, cloud);
    PolygonRenderOptions opts;
    for (const auto& m : mus) {
        GenSeries e = parse_series_literal(p, "x^(" + m + ")", ctx.budget);
        opts.support_lines.push_back(e.terms.at(0).exp);
    }
    if (!svg_out.empty()) write_output(svg_out, polygon_svg(ctx, poly, opts));
    if (ascii || svg_out.empty()) std::cout << polygon_ascii(ctx, poly);
    return kExitOk;
}

int cmd_rank(const Common& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    if (!p.segment) throw SemanticError("rank requires a segment statement");
    int rank = 0;
    bool ok = theorem1_audit(p.equation, *p.segment, &rank);
    Json report = run_report("rank", text, p, elapsed_ms(t0));
    report["rank"] = rank;
    report["rank_bound"] = p.equation.order;
    report["rank_bound_ok"] = ok;
    emit(c, report);
    return ok ? kExitOk : kExitNegative;
}

int cmd_certify(const Common& c, int segment_terms) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    GenSeries segment = p.segment.value_or(GenSeries{});
    Budget budget = p.budget;
    budget.max_terms = segment_terms;
    auto results = complete(ctx, p.equation, segment, budget, to_branch_policy(p.policy));
    if (results.empty()) throw Error("no branches produced");
    const BranchResult& first = results.front();

    GenSeries truncation = first.branch.prefix;
    if (first.verdict != BranchVerdict::ExactSolution) {
        if (first.next_exponent) {
            truncation.valid_to = first.next_exponent;
        } else if (!truncation.terms.empty()) {
            // nothing is known beyond the last term, so it cannot be called
            // final either; the watermark sits on it and drops it
            Exponent last = truncation.terms.back().exp;
            truncation = series_make(ctx, std::move(truncation.terms), last);
        } else {
            throw SemanticError("branch carries no terms to certify");
        }
    }

    int rank = 0;
    bool rank_ok = theorem1_audit(p.equation, truncation, &rank);
    Certificate cert = convergence_certificate(ctx, p.equation, truncation);

    Json report = run_report("certify", text, p, elapsed_ms(t0));
    report["branch"] = branch_json(ctx, first);
    report["rank"] = rank;
    report["rank_bound"] = p.equation.order;
    report["rank_bound_ok"] = rank_ok;
    report["certificate"] = certificate_json(ctx, cert);
    emit(c, report);
    if (!rank_ok) return kExitNegative;
    return cert.regular ? kExitOk : kExitNegative;
}

int cmd_extend_stabilized(const Common& c, int count) {
    auto t0 = std::chrono::steady_clock::now();
    std::string text = read_file(c.file);
    Problem p = parse_problem(text);
    Ctx ctx = p.ctx(precision_budget_from_env());
    if (!p.segment) throw SemanticError("extend-stabilized requires a segment statement");
    StabilizationReport rep = stabilization_check(ctx, p.equation, *p.segment);
    Json report = run_report("extend-stabilized", text, p, elapsed_ms(t0));
    report["stabilization"] = stabilization_json(ctx, rep);
    if (rep.stabilized) {
        GenSeries extended = stabilized_extend(ctx, p.equation, *p.segment, count);
        report["extended"] = series_json(extended, p.syms);
    }
    emit(c, report);
    return rep.stabilized ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton-polygon solver for generalized power series solutions of "
                 "polynomial ODEs and q-difference equations"};
    app.require_subcommand(1);

    Common common;
    std::optional<int> budget_terms;
    std::string budget_exponent, policy, at, svg_out, dump_state;
    bool ascii = false;
    std::vector<std::string> mus;
    int segment_terms = 8;
    int count = 2;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", common.file, "problem file")->required();
        sub->add_option("--json", common.json_out, "write the JSON report to this path ('-' = stdout)");
    };

    CLI::App* branches = app.add_subcommand("branches", "enumerate solution branches");
    add_common(branches);
    branches->add_option("--budget-terms", budget_terms, "maximum number of prefix terms");
    branches->add_option("--budget-exponent", budget_exponent, "stop above this exponent");
    branches->add_option("--policy", policy, "sides_only | sides_and_vertex_roots");

    CLI::App* admissible = app.add_subcommand("admissible", "check the initial segment");
    add_common(admissible);

    CLI::App* polygon = app.add_subcommand("polygon", "render the Newton polygon");
    add_common(polygon);
    polygon->add_option("--at", at, "substitute this prefix first");
    polygon->add_option("--svg", svg_out, "write an SVG rendering to this path");
    polygon->add_flag("--ascii", ascii, "print an ASCII sketch");
    polygon->add_option("--mu", mus, "draw the supporting line of this co-slope");
    polygon->add_option("--dump-state", dump_state,
                        "write the substituted equation as JSON to this path");

    CLI::App* rank = app.add_subcommand("rank", "rational-rank audit of the segment");
    add_common(rank);

    CLI::App* certify = app.add_subcommand("certify", "convergence certificate along a branch");
    add_common(certify);
    certify->add_option("--segment-terms", segment_terms, "complete to this many terms first");

    CLI::App* extend = app.add_subcommand("extend-stabilized", "extend a stabilized segment");
    add_common(extend);
    extend->add_option("--count", count, "number of forced terms to append");

    CLI11_PARSE(app, argc, argv);

    try {
        if (branches->parsed()) return cmd_branches(common, budget_terms, budget_exponent, policy);
        if (admissible->parsed()) return cmd_admissible(common);
        if (polygon->parsed()) return cmd_polygon(common, at, svg_out, ascii, mus, dump_state);
        if (rank->parsed()) return cmd_rank(common);
        if (certify->parsed()) return cmd_certify(common, segment_terms);
        if (extend->parsed()) return cmd_extend_stabilized(common, count);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NeedsAlgebraicExtension& e) {
        std::cerr << "needs algebraic extension: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const OrderUndecidable& e) {
        std::cerr << "undecidable order: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
