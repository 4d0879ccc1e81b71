#pragma once

#include "exclusion/model.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace exclusion {

using VarPair = std::pair<Variable, Variable>;

// S(x|y): the positionwise pairs of an atom.
using PairSet = std::set<VarPair>;

PairSet pair_set(const Atom& a);

// Pairs in positional order, duplicates kept.
std::vector<VarPair> pair_sequence(const Atom& a);

struct CorrespondenceMap {
    // C_d for each variable on the left: the right-hand partners.
    std::map<Variable, VariableSet> left;
    // C_d for each variable on the right: the left-hand partners.
    std::map<Variable, VariableSet> right;

    // C_{(x)_i} and C_{(y)_i} by 1-based position.
    const VariableSet& of_left_position(const Atom& a, std::size_t position) const;
    const VariableSet& of_right_position(const Atom& a, std::size_t position) const;
};

CorrespondenceMap correspondence_sets(const Atom& a);

// u'c | v'c with the same pair set, duplicates removed, diagonal pairs last.
Atom end_constant_form(const Atom& a);

// S(src) ⊆ S(dst) and src.degree <= dst.degree.
bool subset_derivable(const Atom& src, const Atom& dst);

enum class Side { Left, Right };

struct PairCover {
    VarPair pair;
    std::size_t position;  // 1-based position i of dst.side with both components in C_{(d)_i}
};

struct SideWitness {
    Side side;
    std::vector<PairCover> covers;  // one per non-diagonal pair of src, end-constant order
};

// Whether every pair of S(src) is diagonal over all_vars or lies in some
// C_{(d)_i} x C_{(d)_i} for one side d of dst. Left side is tried first.
std::optional<SideWitness> e6_condition(const Atom& src, const Atom& dst, const VariableSet& all_vars);

// Same check against precomputed data for dst; used on the hot path.
class CoverIndex {
public:
    explicit CoverIndex(const Atom& dst);

    const PairSet& pairs() const { return pairs_; }
    std::optional<SideWitness> cover(const Atom& src, const VariableSet& all_vars) const;

private:
    std::optional<std::size_t> covering_position(Side side, const VarPair& p) const;

    PairSet pairs_;
    // Correspondence set for each position, per side.
    std::vector<VariableSet> left_sets_;
    std::vector<VariableSet> right_sets_;
};

}  // namespace exclusion
