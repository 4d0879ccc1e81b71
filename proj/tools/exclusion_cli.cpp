#include "exclusion/calculus.hpp"
#include "exclusion/certificate.hpp"
#include "exclusion/counterexample.hpp"
#include "exclusion/decision.hpp"
#include "exclusion/errors.hpp"
#include "exclusion/oracle.hpp"
#include "exclusion/semantics.hpp"
#include "exclusion/synthesis.hpp"
#include "exclusion/text_format.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace ex = exclusion;
namespace io = exclusion::io;

namespace {

enum Exit : int {
    kDecided = 0,
    kInternal = 1,
    kParse = 2,
    kUnsupported = 3,
    kWrongDirection = 4,
    kCapacity = 5,
};

struct Query {
    std::string sigma_file;
    std::string goal_text;

    std::vector<ex::Atom> sigma() const {
        if (sigma_file.empty())
            return {};
        return io::read_assumptions_file(sigma_file);
    }
    ex::Atom goal() const { return io::parse_atom(goal_text); }
};

void add_query_options(CLI::App* cmd, Query& q) {
    cmd->add_option("-s,--sigma", q.sigma_file, "assumption file, one atom per line (default: empty)")
        ->check(CLI::ExistingFile);
    cmd->add_option("-g,--goal", q.goal_text, "goal atom, e.g. 'excl[1/4](x1 ; y1)'")->required();
}

std::string csv_path_for(const std::string& certificate) {
    std::filesystem::path p(certificate);
    p.replace_extension(".csv");
    return p.string();
}

int cmd_check(const Query& q, bool json, const std::string& certificate, bool timing) {
    const auto sigma = q.sigma();
    const auto goal = q.goal();
    const auto start = std::chrono::steady_clock::now();
    const auto verdict = ex::decide(sigma, goal);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::string written;
    if (!certificate.empty()) {
        if (verdict.holds) {
            const auto d = ex::synthesize(sigma, goal, verdict);
            const auto r = ex::check_derivation(d);
            if (!r.valid)
                throw ex::InternalError("synthesized derivation fails at step " +
                                        std::to_string(r.failed_step.value_or(0)) + ": " + r.reason);
            io::write_file(certificate, io::write_certificate(d));
            written = certificate;
        } else {
            const auto team = ex::counterexample(sigma, goal);
            const auto csv = csv_path_for(certificate);
            io::write_file(csv, io::render_team_csv(team));
            io::Json c;
            c["format"] = io::kFormatVersion;
            c["kind"] = "counterexample";
            c["goal"] = io::render_atom(goal);
            c["l"] = verdict.plan->l;
            c["k"] = verdict.plan->k;
            c["domain_bound"] = ex::domain_size_bound(*verdict.plan);
            c["csv"] = csv;
            io::write_file(certificate, c.dump(2) + "\n");
            written = certificate;
        }
    }

    if (json) {
        auto j = io::verdict_to_json(sigma, goal, verdict);
        if (!written.empty())
            j["certificate"] = written;
        if (timing)
            j["time_ms"] = ms;
        std::cout << j.dump(2) << "\n";
        return kDecided;
    }
    std::cout << "goal:    " << io::render_notation(goal) << "\n";
    std::cout << "holds:   " << (verdict.holds ? "true" : "false") << "\n";
    std::cout << "witness: " << ex::witness_kind_name(verdict.kind) << " (line " << verdict.line << ")\n";
    if (verdict.sigma_index)
        std::cout << "uses:    " << io::render_notation(sigma[*verdict.sigma_index]) << "\n";
    if (verdict.plan)
        std::cout << "plan:    l=" << verdict.plan->l << " k=" << verdict.plan->k << "\n";
    if (!written.empty())
        std::cout << "wrote:   " << written << "\n";
    std::cout << "time:    " << ms << " ms\n";
    return kDecided;
}

int cmd_eval(const std::string& csv, const std::string& atom_text, bool json) {
    const auto team = io::read_team_csv_file(csv);
    const auto atom = io::parse_atom(atom_text);
    const bool sat = ex::satisfies_approx(team, atom);
    const auto removal = ex::min_removal(team, atom);
    if (json) {
        io::Json j;
        j["format"] = io::kFormatVersion;
        j["atom"] = io::render_atom(atom);
        j["rows"] = team.size();
        j["duplicates_dropped"] = team.duplicates_dropped();
        j["satisfied"] = sat;
        j["min_removal"] = removal;
        if (!team.empty())
            j["min_degree"] = ex::min_degree(team, atom).to_string();
        std::cout << j.dump(2) << "\n";
        return kDecided;
    }
    std::cout << "atom:        " << io::render_notation(atom) << "\n";
    std::cout << "rows:        " << team.size();
    if (team.duplicates_dropped() > 0)
        std::cout << " (" << team.duplicates_dropped() << " duplicate rows dropped)";
    std::cout << "\nsatisfied:   " << (sat ? "true" : "false") << "\n";
    std::cout << "min_removal: " << removal << "\n";
    if (!team.empty())
        std::cout << "min_degree:  " << ex::min_degree(team, atom) << "\n";
    return kDecided;
}

int cmd_counterexample(const Query& q, const std::string& out) {
    const auto sigma = q.sigma();
    const auto goal = q.goal();
    const auto verdict = ex::decide(sigma, goal);
    if (verdict.holds) {
        std::cerr << "implication holds (" << ex::witness_kind_name(verdict.kind)
                  << "); no counterexample exists. Try 'derive'.\n";
        return kWrongDirection;
    }
    const auto team = ex::counterexample(sigma, goal);
    io::write_file(out, io::render_team_csv(team));
    std::cout << "l=" << verdict.plan->l << " k=" << verdict.plan->k
              << " domain_bound=" << ex::domain_size_bound(*verdict.plan) << "\n";
    std::cout << "wrote " << team.size() << " rows to " << out << "\n";
    return kDecided;
}

int cmd_derive(const Query& q, const std::string& out, bool expand) {
    const auto sigma = q.sigma();
    const auto goal = q.goal();
    const auto verdict = ex::decide(sigma, goal);
    if (!verdict.holds) {
        std::cerr << "implication does not hold; try 'counterexample' for a separating team.\n";
        return kWrongDirection;
    }
    auto d = ex::synthesize(sigma, goal, verdict);
    if (expand)
        d = ex::expand_macros(d);
    const auto r = ex::check_derivation(d);
    if (!r.valid) {
        std::cerr << "internal error: derivation fails at step " << r.failed_step.value_or(0) << ": " << r.reason
                  << "\n";
        return kInternal;
    }
    io::write_file(out, io::write_certificate(d));
    for (const auto& s : d.steps)
        std::cout << s.index << "  " << ex::rule_name(s.rule) << "  " << io::render_notation(s.conclusion) << "\n";
    if (r.exact_system)
        std::cout << "(exact fragment)\n";
    return kDecided;
}

int cmd_verify(const std::string& path) {
    const auto d = io::read_certificate(io::read_file(path));
    const auto r = ex::check_derivation(d);
    if (!r.valid) {
        std::cout << "invalid";
        if (r.failed_step)
            std::cout << " at step " << *r.failed_step;
        std::cout << ": " << r.reason << "\n";
        return kInternal;
    }
    std::cout << "valid, " << d.steps.size() << " steps" << (r.exact_system ? ", exact fragment" : "") << "\n";
    return kDecided;
}

int cmd_oracle_check(const Query& q, std::optional<std::size_t> max_rows, std::optional<std::size_t> domain,
                     std::uint64_t budget, bool plain) {
    const auto sigma = q.sigma();
    const auto goal = q.goal();
    const auto verdict = ex::decide(sigma, goal);
    const auto bounds = ex::oracle_bounds(sigma, goal);
    const std::size_t rows = max_rows.value_or(bounds.max_rows);
    const std::size_t dom = domain.value_or(bounds.domain_size);
    ex::EnumerationOptions opts;
    opts.budget = budget;
    opts.canonical = !plain;
    const auto res = ex::oracle_check(sigma, goal, rows, dom, opts);
    std::cout << "bounds: max_rows=" << rows << " domain=" << dom << "\n";
    std::cout << "teams:  " << res.teams_examined << "\n";
    std::cout << "oracle: holds=" << (res.implied ? "true" : "false") << "\n";
    std::cout << "decide: holds=" << (verdict.holds ? "true" : "false") << "\n";
    if (res.implied != verdict.holds) {
        std::cout << "DISAGREE\n";
        if (res.separating_team)
            std::cout << io::render_team_csv(*res.separating_team);
        return kInternal;
    }
    std::cout << "agree\n";
    return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide, derive and refute approximate exclusion atoms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "exclusion 1.0");

    Query query;
    bool json = false;
    bool timing = false;
    bool expand = false;
    bool plain = false;
    std::string out;
    std::string csv;
    std::string atom_text;
    std::string cert_in;
    std::optional<std::size_t> max_rows;
    std::optional<std::size_t> domain;
    std::uint64_t budget = ex::EnumerationOptions{}.budget;

    auto* check = app.add_subcommand("check", "decide whether the assumptions imply the goal");
    add_query_options(check, query);
    check->add_flag("--json", json, "structured output");
    check->add_option("--certificate", out, "write a derivation (TRUE) or counterexample (FALSE)");
    check->add_flag("--timing", timing, "include wall time in --json output");

    auto* eval = app.add_subcommand("eval", "evaluate an atom on a CSV team");
    eval->add_option("team", csv, "team CSV")->required()->check(CLI::ExistingFile);
    eval->add_option("atom", atom_text, "atom text")->required();
    eval->add_flag("--json", json, "structured output");

    auto* cex = app.add_subcommand("counterexample", "write a verified countermodel as CSV");
    add_query_options(cex, query);
    cex->add_option("-o,--out", out, "output CSV")->required();

    auto* derive = app.add_subcommand("derive", "write a checked derivation as JSON");
    add_query_options(derive, query);
    derive->add_option("-o,--out", out, "output JSON")->required();
    derive->add_flag("--expand", expand, "replace PERM/CONTRACT by A5/A4 steps");

    auto* verify = app.add_subcommand("verify", "check a derivation certificate");
    verify->add_option("certificate", cert_in, "certificate JSON")->required()->check(CLI::ExistingFile);

    auto* oracle = app.add_subcommand("oracle-check", "compare decide with brute-force enumeration");
    add_query_options(oracle, query);
    oracle->add_option("--max-rows", max_rows, "largest team size (default: from the plan)");
    oracle->add_option("--domain", domain, "number of values (default: from the plan)");
    oracle->add_option("--budget", budget, "enumeration budget")->capture_default_str();
    oracle->add_flag("--no-canonical", plain, "do not prune renaming-equivalent teams");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kDecided : kParse;
    }

    try {
        if (*check)
            return cmd_check(query, json, out, timing);
        if (*eval)
            return cmd_eval(csv, atom_text, json);
        if (*cex)
            return cmd_counterexample(query, out);
        if (*derive)
            return cmd_derive(query, out, expand);
        if (*verify)
            return cmd_verify(cert_in);
        if (*oracle)
            return cmd_oracle_check(query, max_rows, domain, budget, plain);
    } catch (const ex::UnsupportedDegree& e) {
        std::cerr << "unsupported degree: " << e.what() << "\n";
        return kUnsupported;
    } catch (const ex::CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const ex::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const ex::Error& e) {
        // ParseError, ArityError, UnknownVariable and friends are input problems.
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
