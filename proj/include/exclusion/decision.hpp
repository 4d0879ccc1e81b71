#pragma once

#include "exclusion/counterexample.hpp"
#include "exclusion/model.hpp"
#include "exclusion/pair_set.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace exclusion {

enum class WitnessKind {
    TrivialDegreeOne,  // goal degree 1, rule A8
    Membership,        // goal or its swap listed with a degree no larger
    Contradictory,     // some u|_q u with q < 1 in sigma
    Subset,            // S(u|v) or S(v|u) inside S(x|y)
    E6,                // one collapse step covers S(u|v)
    GoalContradictory, // FALSE: goal is x|x
    NoCandidate,       // FALSE: nothing in sigma applies
};

std::string_view witness_kind_name(WitnessKind k);

struct Verdict {
    bool holds = false;
    WitnessKind kind = WitnessKind::NoCandidate;
    // Decision-procedure line that returned (0 for the degree-one extension).
    int line = 15;
    std::optional<std::size_t> sigma_index;  // the atom of sigma used
    bool swapped = false;                    // Membership/Subset: used v|u
    std::optional<SideWitness> cover;        // E6
    std::optional<CounterexamplePlan> plan;  // FALSE verdicts
};

// Decides sigma |- goal. Throws UnsupportedDegree when 1/2 <= p < 1.
Verdict decide(std::span<const Atom> sigma, const Atom& goal);

// Least degree in sigma strictly above p.
std::optional<Rational> min_gap_degree(std::span<const Atom> sigma, const Rational& p);

// Throws UnsupportedDegree unless p < 1/2 or p = 1.
void require_supported_degree(const Rational& p);

}  // namespace exclusion
