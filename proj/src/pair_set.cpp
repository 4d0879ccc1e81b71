#include "exclusion/pair_set.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>

namespace exclusion {

PairSet pair_set(const Atom& a) {
    PairSet out;
    for (std::size_t i = 0; i < a.arity(); ++i)
        out.emplace(a.left()[i], a.right()[i]);
    return out;
}

std::vector<VarPair> pair_sequence(const Atom& a) {
    std::vector<VarPair> out;
    out.reserve(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i)
        out.emplace_back(a.left()[i], a.right()[i]);
    return out;
}

const VariableSet& CorrespondenceMap::of_left_position(const Atom& a, std::size_t position) const {
    return left.at(a.left().project(position));
}

const VariableSet& CorrespondenceMap::of_right_position(const Atom& a, std::size_t position) const {
    return right.at(a.right().project(position));
}

CorrespondenceMap correspondence_sets(const Atom& a) {
    CorrespondenceMap out;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        out.left[a.left()[i]].insert(a.right()[i]);
        out.right[a.right()[i]].insert(a.left()[i]);
    }
    return out;
}

Atom end_constant_form(const Atom& a) {
    std::vector<Variable> lhs, rhs, diagonal;
    PairSet seen;
    for (const auto& p : pair_sequence(a)) {
        if (!seen.insert(p).second)
            continue;
        if (p.first == p.second) {
            diagonal.push_back(p.first);
        } else {
            lhs.push_back(p.first);
            rhs.push_back(p.second);
        }
    }
    lhs.insert(lhs.end(), diagonal.begin(), diagonal.end());
    rhs.insert(rhs.end(), diagonal.begin(), diagonal.end());
    return Atom(VarTuple(std::move(lhs)), VarTuple(std::move(rhs)), a.degree());
}

bool subset_derivable(const Atom& src, const Atom& dst) {
    if (src.degree() > dst.degree())
        return false;
    const auto target = pair_set(dst);
    for (std::size_t i = 0; i < src.arity(); ++i)
        if (!target.contains(VarPair(src.left()[i], src.right()[i])))
            return false;
    return true;
}

std::optional<SideWitness> e6_condition(const Atom& src, const Atom& dst, const VariableSet& all_vars) {
    return CoverIndex(dst).cover(src, all_vars);
}

CoverIndex::CoverIndex(const Atom& dst) : pairs_(pair_set(dst)) {
    const auto c = correspondence_sets(dst);
    left_sets_.reserve(dst.arity());
    right_sets_.reserve(dst.arity());
    for (std::size_t i = 0; i < dst.arity(); ++i) {
        left_sets_.push_back(c.left.at(dst.left()[i]));
        right_sets_.push_back(c.right.at(dst.right()[i]));
    }
}

std::optional<std::size_t> CoverIndex::covering_position(Side side, const VarPair& p) const {
    const auto& sets = side == Side::Left ? left_sets_ : right_sets_;
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i].contains(p.first) && sets[i].contains(p.second))
            return i + 1;
    return std::nullopt;
}

std::optional<SideWitness> CoverIndex::cover(const Atom& src, const VariableSet& all_vars) const {
    const auto ordered = end_constant_form(src);
    for (Side side : {Side::Left, Side::Right}) {
        SideWitness witness{side, {}};
        bool ok = true;
        for (std::size_t j = 0; j < ordered.arity() && ok; ++j) {
            VarPair p(ordered.left()[j], ordered.right()[j]);
            if (p.first == p.second && all_vars.contains(p.first))
                continue;
            if (auto i = covering_position(side, p))
                witness.covers.push_back({std::move(p), *i});
            else
                ok = false;
        }
        if (ok)
            return witness;
    }
    return std::nullopt;
}

}  // namespace exclusion
