#pragma once

#include "exclusion/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace exclusion {

// How the countermodel for a non-implied goal is built.
enum class PlanKind {
    Unary,   // goal x|x: the one-row team with all values distinct
    Blocks,  // l shared blocks in a team of k rows
};

struct CounterexamplePlan {
    PlanKind kind = PlanKind::Blocks;
    Atom goal;
    std::vector<Atom> sigma;
    std::size_t l = 1;
    std::size_t k = 2;
    std::optional<Rational> gap_degree;  // least degree in sigma above the goal's
    // Equivalence classes of goal positions (0-based): the closure of
    // i ~ j iff (x)_i = (x)_j or (y)_i = (y)_j.
    std::vector<std::vector<std::size_t>> value_classes;
    // (i, j) with (x)_i = (y)_j; those variables share a single column.
    std::vector<std::pair<std::size_t, std::size_t>> column_merges;
};

// The plan for given degrees; does not consult the decision procedure.
CounterexamplePlan make_plan(std::span<const Atom> sigma, const Atom& goal);

// Plan for a goal the decision procedure rejects; throws InternalError otherwise.
CounterexamplePlan plan(std::span<const Atom> sigma, const Atom& goal);

// Raw construction, no verification.
Team build_team(const CounterexamplePlan& plan);

// Team satisfies every assumption and falsifies the goal.
bool verify(const Team& team, std::span<const Atom> sigma, const Atom& goal);

// build_team followed by verify; throws InternalError when verification fails.
Team counterexample(std::span<const Atom> sigma, const Atom& goal);

// One row, every variable of sigma (then of `extra`) gets a fresh value.
// Throws Error if sigma contains a contradictory atom.
Team canonical_satisfying_team(std::span<const Atom> sigma, std::span<const Atom> extra = {});

// 3n+2m for l=1, k=2; otherwise 3ln+2lm+(k-2l)(2n+m).
std::size_t domain_size_bound(const CounterexamplePlan& plan);
std::size_t domain_size_bound(std::size_t n, std::size_t m, std::size_t l, std::size_t k);

// Variables of sigma outside Var(x) ∪ Var(y).
std::size_t outside_variable_count(std::span<const Atom> sigma, const Atom& goal);

// Smallest k >= 2 with l = floor(p k) + 1, k >= 2l and l/k <= r when r exists.
std::pair<std::size_t, std::size_t> choose_ratio(const Rational& p, const std::optional<Rational>& r);

}  // namespace exclusion
