#pragma once

#include "exclusion/model.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace exclusion {

using ValueTuple = std::vector<std::string>;

struct ConflictWitness {
    std::vector<std::size_t> left_rows;   // rows s with s(left) = value
    std::vector<std::size_t> right_rows;  // rows s with s(right) = value
};

// Every value tuple taken both by some s(left) and some s(right).
struct ConflictReport {
    std::map<ValueTuple, ConflictWitness> conflicts;

    bool empty() const { return conflicts.empty(); }
};

struct RemovalOptions {
    // Largest number of interacting conflict values resolved by exhaustive
    // choice; beyond it min_removal throws CapacityError.
    std::size_t max_conflict_values = 20;
};

// The degree of the atom is ignored by the exact-part functions below.
bool satisfies_exact(const Team& team, const Atom& atom);
ConflictReport conflict_report(const Team& team, const Atom& atom);
std::size_t min_removal(const Team& team, const Atom& atom, const RemovalOptions& options = {});
bool satisfies_approx(const Team& team, const Atom& atom, const RemovalOptions& options = {});
// min_removal / |T|; throws EmptyTeam on the empty team.
Rational min_degree(const Team& team, const Atom& atom, const RemovalOptions& options = {});

}  // namespace exclusion
