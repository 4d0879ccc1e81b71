// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "rule_instances.hpp"
#include "support.hpp"

#include "exclusion/calculus.hpp"
#include "exclusion/counterexample.hpp"
#include "exclusion/decision.hpp"
#include "exclusion/errors.hpp"
#include "exclusion/oracle.hpp"
#include "exclusion/pair_set.hpp"
#include "exclusion/semantics.hpp"
#include "exclusion/synthesis.hpp"
#include "exclusion/text_format.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef EXCLUSION_CLI_PATH
#error "EXCLUSION_CLI_PATH must point at the command line tool"
#endif

using namespace exclusion;
using support::atom;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  (" << detail << ")"
              << std::endl;
    if (!ok)
        ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << x;
    return s.str();
}

std::size_t distinct_values(const Team& t) {
    std::set<std::string> seen;
    for (const auto& r : t.rows())
        seen.insert(r.begin(), r.end());
    return seen.size();
}

std::string show(std::span<const Atom> sigma, const Atom& goal) {
    std::string s = "{";
    for (std::size_t i = 0; i < sigma.size(); ++i)
        s += (i ? ", " : "") + io::render_atom(sigma[i]);
    return s + "} => " + io::render_atom(goal);
}

// ---------------------------------------------------------------- the small space

const std::vector<Rational> kSmallDegrees{Rational(0), Rational(1, 4), Rational(1, 3)};

std::vector<Atom> small_universe(const std::vector<Variable>& vars) {
    std::vector<VarTuple> tuples;
    for (const auto& a : vars)
        tuples.push_back(VarTuple(std::vector{a}));
    for (const auto& a : vars)
        for (const auto& b : vars)
            tuples.push_back(VarTuple(std::vector{a, b}));
    std::vector<Atom> out;
    for (const auto& l : tuples)
        for (const auto& r : tuples)
            if (l.size() == r.size())
                for (const auto& d : kSmallDegrees)
                    out.emplace_back(l, r, d);
    return out;
}

struct SpaceStats {
    std::uint64_t instances = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t trues = 0;
    std::uint64_t falses = 0;
    std::uint64_t bad_derivations = 0;
    std::uint64_t bad_teams = 0;
    std::uint64_t over_bound = 0;
    std::uint64_t sigmas = 0;
    std::uint64_t canonical_checked = 0;
    std::uint64_t canonical_failed = 0;
    std::size_t max_rows_needed = 0;
    std::size_t max_domain_needed = 0;
    std::vector<std::string> examples;

    void note(const std::string& what) {
        if (examples.size() < 5)
            examples.push_back(what);
    }
};

struct Keystone {
    SpaceStats st;
    std::size_t universe_size = 0;
    std::size_t rows = 0;
    std::size_t domain = 0;
    std::size_t profiles = 0;
    std::uint64_t teams = 0;
    double oracle_seconds = 0;
    double loop_seconds = 0;
};

Keystone run_keystone() {
    Keystone k;
    const auto vars = support::vars({"a", "b", "c"});
    const auto universe = small_universe(vars);
    k.universe_size = universe.size();

    // The largest plan over the space fixes the oracle bounds; each instance's
    // own bounded space is contained in this one up to renaming of values.
    for (const auto& g : universe)
        for (const auto& q : kSmallDegrees) {
            const std::vector sigma{Atom(VarTuple{"a"}, VarTuple{"b"}, q)};
            const auto b = oracle_bounds(sigma, g);
            k.rows = std::max(k.rows, b.max_rows);
            k.domain = std::max(k.domain, b.domain_size);
        }
    const auto t0 = Clock::now();
    const ProfileOracle oracle(vars, universe, k.rows, k.domain);
    const auto table = oracle.pair_table();
    k.oracle_seconds = seconds_since(t0);
    k.profiles = oracle.profile_count();
    k.teams = oracle.teams_examined();

    auto& st = k.st;
    const auto t1 = Clock::now();
    const std::size_t u = universe.size();
    std::vector<Atom> sigma;
    auto visit = [&](std::optional<std::size_t> i, std::optional<std::size_t> j) {
        sigma.clear();
        if (i)
            sigma.push_back(universe[*i]);
        if (j)
            sigma.push_back(universe[*j]);
        ++st.sigmas;

        const bool contradictory =
            std::any_of(sigma.begin(), sigma.end(), [](const Atom& a) { return a.is_contradictory(); });
        if (!contradictory) {
            ++st.canonical_checked;
            const auto team = canonical_satisfying_team(sigma, universe);
            if (!std::all_of(sigma.begin(), sigma.end(), [&](const Atom& a) { return satisfies_approx(team, a); }))
                ++st.canonical_failed;
        }

        for (std::size_t g = 0; g < u; ++g) {
            const auto& goal = universe[g];
            ++st.instances;
            const auto v = decide(sigma, goal);
            const bool implied = table.implies(i, j, g);
            if (v.holds != implied) {
                ++st.disagreements;
                st.note("disagree: " + show(sigma, goal));
            }
            if (v.holds) {
                ++st.trues;
                const auto d = synthesize(sigma, goal, v);
                if (!check_derivation(d).valid) {
                    ++st.bad_derivations;
                    st.note("bad derivation: " + show(sigma, goal));
                }
                continue;
            }
            ++st.falses;
            const auto team = build_team(*v.plan);
            if (!verify(team, sigma, goal)) {
                ++st.bad_teams;
                st.note("team does not verify: " + show(sigma, goal));
            }
            const auto bound = domain_size_bound(*v.plan);
            if (distinct_values(team) > bound) {
                ++st.over_bound;
                st.note("too many values: " + show(sigma, goal));
            }
            st.max_rows_needed = std::max(st.max_rows_needed, v.plan->k);
            st.max_domain_needed = std::max(st.max_domain_needed, bound);
        }
    };
    visit(std::nullopt, std::nullopt);
    for (std::size_t i = 0; i < u; ++i)
        visit(i, std::nullopt);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = i + 1; j < u; ++j)
            visit(i, j);
    k.loop_seconds = seconds_since(t1);
    return k;
}

// Per-instance bounds for a sample, checked with the plain oracle.
std::pair<std::size_t, std::size_t> spot_check(std::size_t samples) {
    const auto vars = support::vars({"a", "b", "c"});
    const auto universe = small_universe(vars);
    support::Gen gen(2024);
    std::size_t checked = 0, wrong = 0;
    while (checked < samples) {
        std::vector<Atom> sigma;
        for (std::size_t i = 0, n = gen.below(3); i < n; ++i)
            sigma.push_back(gen.pick(universe));
        const auto& goal = gen.pick(universe);
        const auto b = oracle_bounds(sigma, goal);
        if (b.max_rows > 3)
            continue;
        ++checked;
        if (decide(sigma, goal).holds != oracle_implies(sigma, goal, b.max_rows, b.domain_size)) {
            ++wrong;
            std::cout << "      spot check disagrees: " << show(sigma, goal) << "\n";
        }
    }
    return {checked, wrong};
}

// ---------------------------------------------------------------- rule soundness

void rule_soundness() {
    support::Gen gen(7);
    const auto pool = support::vars({"a", "b", "c", "d", "e"});
    const std::vector<Rational> degrees{Rational(0),    Rational(1, 6), Rational(1, 5), Rational(1, 4),
                                        Rational(1, 3), Rational(2, 5), Rational(1, 2), Rational(2, 3),
                                        Rational(3, 4), Rational(1)};
    constexpr int kTrials = 10'000;
    std::string detail;
    bool ok = true;
    for (auto rule : {Rule::A1, Rule::A2, Rule::A3, Rule::A4, Rule::A5, Rule::A6, Rule::A7, Rule::A8}) {
        int premise_true = 0, violations = 0, invalid = 0;
        for (int trial = 0; trial < kTrials; ++trial) {
            const auto inst = support::random_instance(rule, gen, pool, degrees);
            if (!check_derivation(support::as_derivation(inst)).valid)
                ++invalid;
            const auto team = gen.team(pool, 6, 4);
            const bool prem = !inst.premise || satisfies_approx(team, *inst.premise);
            const bool prem_brute = !inst.premise || brute_force_satisfies(team, *inst.premise);
            const bool concl = satisfies_approx(team, inst.step.conclusion);
            const bool concl_brute = brute_force_satisfies(team, inst.step.conclusion);
            if (prem != prem_brute || concl != concl_brute)
                ++invalid;
            if (prem) {
                ++premise_true;
                if (!concl)
                    ++violations;
            }
        }
        ok = ok && violations == 0 && invalid == 0;
        detail += (detail.empty() ? "" : ", ") + std::string(rule_name(rule)) + " " + std::to_string(violations) +
                  "/" + std::to_string(premise_true);
        if (invalid)
            detail += " [" + std::to_string(invalid) + " invalid]";
    }
    report(3, ok, "rule soundness", std::to_string(kTrials) + " trials per rule; violations/premise-true: " + detail);
}

// ---------------------------------------------------------------- golden vectors

void golden(const SpaceStats& st) {
    std::vector<std::string> bad;

    // (a) collapse of arity
    {
        const auto sigma = support::atoms({"excl(x1 w1 w2 ; y1 w1 w2)"});
        const auto goal = atom("excl(z1 z1 ; x1 y1)");
        const auto v = decide(sigma, goal);
        const auto d = derive(sigma, goal);
        const bool a6 = std::any_of(d.steps.begin(), d.steps.end(), [](const auto& s) { return s.rule == Rule::A6; });
        if (!(v.holds && v.kind == WitnessKind::E6 && v.cover && v.cover->side == Side::Left && a6 &&
              check_derivation(d).valid))
            bad.push_back("a");
    }
    // (b) set representation
    {
        const auto a = atom("excl(x2 y3 x2 x4 ; y1 y3 y3 y4)");
        const auto v = [](const char* n) { return Variable(n); };
        const PairSet expected{{v("x2"), v("y1")}, {v("y3"), v("y3")}, {v("x2"), v("y3")}, {v("x4"), v("y4")}};
        const auto c = correspondence_sets(a);
        if (!(pair_set(a) == expected && c.of_left_position(a, 1) == VariableSet{v("y1"), v("y3")} &&
              c.of_left_position(a, 2) == VariableSet{v("y3")} &&
              c.of_right_position(a, 2) == VariableSet{v("y3"), v("x2")}))
            bad.push_back("b");
    }
    // (c) locality example
    {
        const auto t2 = support::two_rows();
        const auto t3 = support::three_rows();
        if (!(satisfies_approx(t2, atom("excl[1/2](x ; y)")) && min_removal(t2, atom("excl(x ; y)")) == 1 &&
              !satisfies_approx(t3, atom("excl[1/2](x u ; y v)")) && min_removal(t3, atom("excl(x u ; y v)")) == 2))
            bad.push_back("c");
    }
    // (d) unary fresh-value team, over every assumption set of the small space
    if (st.canonical_failed != 0 || st.canonical_checked == 0)
        bad.push_back("d");

    std::string detail = "a, b, c exact; d over " + std::to_string(st.canonical_checked) +
                         " non-contradictory assumption sets, " + std::to_string(st.canonical_failed) + " failures";
    if (!bad.empty()) {
        detail += "; failing:";
        for (const auto& b : bad)
            detail += " " + b;
    }
    report(4, bad.empty(), "golden vectors", detail);
}

// ---------------------------------------------------------------- timing

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

struct TimingCase {
    std::vector<Atom> sigma;
    Atom goal;
};

TimingCase timing_case(std::uint64_t seed, std::size_t count, std::size_t arity, std::size_t nvars) {
    support::Gen gen(seed);
    std::vector<Variable> pool;
    for (std::size_t i = 0; i < nvars; ++i)
        pool.emplace_back("v" + std::to_string(i));
    const std::vector<Rational> degrees{Rational(0), Rational(1, 4), Rational(1, 3)};
    std::vector<Atom> sigma;
    for (std::size_t i = 0; i < count; ++i)
        sigma.emplace_back(gen.tuple(pool, arity), gen.tuple(pool, arity), gen.degree(degrees));
    // Degree 1/3 lets every assumption through the degree filter.
    return {std::move(sigma), Atom(gen.tuple(pool, arity), gen.tuple(pool, arity), Rational(1, 3))};
}

double time_decide(const TimingCase& c, int runs, bool& holds) {
    std::vector<double> t;
    for (int r = 0; r < runs; ++r) {
        const auto start = Clock::now();
        holds = decide(c.sigma, c.goal).holds;
        t.push_back(seconds_since(start));
    }
    return median(t);
}

void polynomial_time() {
    bool holds = false;
    const auto main_case = timing_case(99, 1000, 10, 60);
    const double med = time_decide(main_case, 20, holds);

    const std::vector<std::size_t> ladder{5, 10, 20, 40};
    std::vector<double> xs, ys;
    std::string steps;
    for (auto n : ladder) {
        const auto c = timing_case(100 + n, 1000, n, 60);
        const double t = time_decide(c, 21, holds);
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(t));
        steps += (steps.empty() ? "" : ", ") + std::to_string(n) + ":" + fmt(t * 1e3, 2) + "ms";
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = num / den;
    constexpr double kMaxExponent = 2.25;
    report(6, med < 1.0 && slope <= kMaxExponent, "polynomial time",
           "|S|=1000, arity 10, 60 variables: median " + fmt(med * 1e3, 2) + "ms over 20 runs (< 1000ms); ladder " +
               steps + "; fitted exponent " + fmt(slope, 2) + " (<= " + fmt(kMaxExponent, 2) + ")");
}

// ---------------------------------------------------------------- degree guard

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(EXCLUSION_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void degree_guard() {
    // Library: every fraction in [1/2, 1) with denominator up to 100.
    std::size_t rejected = 0, total = 0;
    const auto sigma = support::atoms({"excl(a ; b)", "excl[1/3](b c ; c a)"});
    for (std::uint64_t d = 2; d <= 100; ++d)
        for (std::uint64_t n = (d + 1) / 2; n < d; ++n) {
            const Rational p(n, d);
            if (p < Rational(1, 2) || p.denominator() != d)
                continue;
            ++total;
            try {
                (void)decide(sigma, atom("excl(a ; b)").with_degree(p));
            } catch (const UnsupportedDegree&) {
                ++rejected;
            }
        }

    // Command line: exit code 3 and nothing on stdout.
    std::size_t cli_ok = 0, cli_total = 0;
    for (const char* deg : {"1/2", "0.5", "2/4", "3/5", "2/3", "3/4", "0.75", "99/100", "0.999", "999999/1000000"}) {
        ++cli_total;
        for (const char* extra : {"", " --json"}) {
            const auto r = cli(std::string("check -g 'excl[") + deg + "](a b ; c d)'" + extra);
            if (r.code == 3 && r.out.empty())
                ++cli_ok;
        }
    }
    cli_total *= 2;

    // Degree 1: always TRUE by A8.
    std::size_t ones = 0, ones_ok = 0;
    const auto universe = small_universe(support::vars({"a", "b", "c"}));
    support::Gen gen(5);
    for (const auto& a : universe) {
        if (!a.degree().is_zero())
            continue;
        const auto goal = a.with_degree(Rational(1));
        for (int s = 0; s < 20; ++s) {
            std::vector<Atom> sig;
            for (std::size_t i = 0, n = gen.below(3); i < n; ++i)
                sig.push_back(gen.pick(universe));
            ++ones;
            const auto v = decide(sig, goal);
            const auto d = derive(sig, goal);
            if (v.holds && v.kind == WitnessKind::TrivialDegreeOne && d.steps.size() == 1 &&
                d.steps[0].rule == Rule::A8 && check_derivation(d).valid)
                ++ones_ok;
        }
    }
    const auto one_cli = cli("check -g 'excl[1](a ; a)' --json");
    const bool one_cli_ok = one_cli.code == 0 && one_cli.out.find("\"holds\": true") != std::string::npos;

    report(7, rejected == total && cli_ok == cli_total && ones_ok == ones && one_cli_ok, "unsupported-degree guard",
           std::to_string(rejected) + "/" + std::to_string(total) + " library rejections, " + std::to_string(cli_ok) +
               "/" + std::to_string(cli_total) + " CLI exit 3 with empty output, degree 1: " +
               std::to_string(ones_ok) + "/" + std::to_string(ones) + " TRUE by A8" +
               (one_cli_ok ? ", CLI holds=true" : ", CLI degree 1 FAILED"));
}

}  // namespace

int main() {
    std::cout << "acceptance run" << std::endl;
    const auto start = Clock::now();

    const auto k = run_keystone();
    for (const auto& e : k.st.examples)
        std::cout << "      " << e << "\n";
    const auto [spot, spot_wrong] = spot_check(300);
    report(1, k.st.disagreements == 0 && spot_wrong == 0 && k.st.max_rows_needed <= k.rows, "keystone equivalence",
           std::to_string(k.st.instances) + " instances (" + std::to_string(k.st.sigmas) + " assumption sets x " +
               std::to_string(k.universe_size) + " goals), " + std::to_string(k.st.disagreements) +
               " disagreements; oracle " + std::to_string(k.profiles) + " profiles from " + std::to_string(k.teams) +
               " teams, rows <= " + std::to_string(k.rows) + ", domain " + std::to_string(k.domain) + ", built in " +
               fmt(k.oracle_seconds, 1) + "s; per-instance spot check " + std::to_string(spot - spot_wrong) + "/" +
               std::to_string(spot) + "; loop " + fmt(k.loop_seconds, 1) + "s");
    report(2, k.st.bad_derivations == 0 && k.st.bad_teams == 0, "certificate round trip",
           std::to_string(k.st.trues) + " derivations, " + std::to_string(k.st.bad_derivations) + " rejected; " +
               std::to_string(k.st.falses) + " counterexample teams, " + std::to_string(k.st.bad_teams) +
               " fail verify");
    rule_soundness();
    golden(k.st);
    report(5, k.st.over_bound == 0, "domain bound conformance",
           std::to_string(k.st.falses) + " teams, " + std::to_string(k.st.over_bound) +
               " above their bound; largest bound used " + std::to_string(k.st.max_domain_needed));
    polynomial_time();
    degree_guard();

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << " in "
              << fmt(seconds_since(start), 1) << "s" << std::endl;
    return failures == 0 ? 0 : 1;
}
