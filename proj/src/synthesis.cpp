#include "exclusion/synthesis.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>

namespace exclusion {

namespace {

class Builder {
public:
    Builder(std::span<const Atom> assumptions, const Atom& goal)
        : d_{std::vector<Atom>(assumptions.begin(), assumptions.end()), {}, goal} {}

    const Atom& current() const { return d_.steps.back().conclusion; }

    void hyp(const Atom& a) { push(Rule::Hyp, {}, std::monostate{}, a); }
    void a8(const Atom& goal) { push(Rule::A8, {}, std::monostate{}, goal); }

    void apply(Rule rule, StepWitness w, Atom conclusion) {
        push(rule, {d_.steps.size() - 1}, std::move(w), std::move(conclusion));
    }

    void swap_sides() { apply(Rule::A2, std::monostate{}, current().swapped()); }

    void raise_to(const Rational& degree) {
        if (current().degree() != degree)
            apply(Rule::A7, witness::Raise{degree}, current().with_degree(degree));
    }

    // Moves to `target` using only pair-preserving rules; requires
    // S(current) ⊆ S(target) and equal degrees.
    void reach_tuples(const VarTuple& left, const VarTuple& right) {
        const Atom target(left, right, current().degree());
        const Atom cur = current();
        if (cur == target)
            return;
        const auto n = cur.arity();
        const auto m = target.arity();

        if (n < m && take_prefix(target, n) == std::pair(cur.left(), cur.right())) {
            apply(Rule::A3, witness::Append{m - n}, target);
            return;
        }
        if (auto source = match_positions(cur, target); source && n >= m) {
            apply(n == m ? Rule::Perm : Rule::Contract, witness::Reorder{*source}, target);
            return;
        }
        const Atom extended(cur.left().concat(left), cur.right().concat(right), cur.degree());
        apply(Rule::A3, witness::Append{m}, extended);
        std::vector<std::size_t> source(m);
        for (std::size_t i = 0; i < m; ++i)
            source[i] = n + i;
        apply(Rule::Contract, witness::Reorder{std::move(source)}, target);
    }

    Derivation take() && { return std::move(d_); }

private:
    static std::pair<VarTuple, VarTuple> take_prefix(const Atom& a, std::size_t n) {
        return {a.left().slice(0, n), a.right().slice(0, n)};
    }

    // Injective map from target positions onto equal pairs of `from`, when
    // the target keeps every pair of `from`.
    static std::optional<std::vector<std::size_t>> match_positions(const Atom& from, const Atom& target) {
        if (pair_set(from) != pair_set(target))
            return std::nullopt;
        std::vector<bool> used(from.arity(), false);
        std::vector<std::size_t> source;
        for (std::size_t i = 0; i < target.arity(); ++i) {
            bool found = false;
            for (std::size_t j = 0; j < from.arity() && !found; ++j)
                if (!used[j] && from.left()[j] == target.left()[i] && from.right()[j] == target.right()[i]) {
                    used[j] = true;
                    source.push_back(j);
                    found = true;
                }
            if (!found)
                return std::nullopt;
        }
        return source;
    }

    void push(Rule rule, std::vector<std::size_t> premises, StepWitness w, Atom conclusion) {
        d_.steps.push_back(DerivationStep{d_.steps.size(), std::move(conclusion), rule, std::move(premises),
                                          std::move(w)});
    }

    Derivation d_;
};

const Atom& used_atom(std::span<const Atom> assumptions, const Verdict& verdict) {
    if (!verdict.sigma_index || *verdict.sigma_index >= assumptions.size())
        throw InternalError("verdict names no assumption");
    return assumptions[*verdict.sigma_index];
}

}  // namespace

Derivation synthesize(std::span<const Atom> assumptions, const Atom& goal, const Verdict& verdict) {
    if (!verdict.holds)
        throw InternalError("cannot synthesize a derivation for a rejected goal");
    Builder b(assumptions, goal);

    switch (verdict.kind) {
    case WitnessKind::TrivialDegreeOne:
        b.a8(goal);
        break;
    case WitnessKind::Membership:
        b.hyp(used_atom(assumptions, verdict));
        if (verdict.swapped)
            b.swap_sides();
        b.raise_to(goal.degree());
        break;
    case WitnessKind::Contradictory:
        b.hyp(used_atom(assumptions, verdict));
        b.apply(Rule::A1, std::monostate{}, goal.exact());
        b.raise_to(goal.degree());
        break;
    case WitnessKind::Subset:
        b.hyp(used_atom(assumptions, verdict));
        if (verdict.swapped)
            b.swap_sides();
        b.reach_tuples(goal.left(), goal.right());
        b.raise_to(goal.degree());
        break;
    case WitnessKind::E6: {
        if (!verdict.cover)
            throw InternalError("e6 verdict without a cover");
        const auto& src = used_atom(assumptions, verdict);
        b.hyp(src);
        const auto ordered = end_constant_form(src);
        b.reach_tuples(ordered.left(), ordered.right());
        const auto& covers = verdict.cover->covers;
        const auto head = covers.size();
        if (head == 0 || head > ordered.arity())
            throw InternalError("e6 cover does not fit the assumption");
        const auto& side = verdict.cover->side == Side::Left ? goal.left() : goal.right();
        std::vector<Variable> z;
        for (std::size_t j = 0; j < head; ++j) {
            if (covers[j].pair != VarPair(ordered.left()[j], ordered.right()[j]))
                throw InternalError("e6 cover order differs from the end-constant form");
            z.push_back(side.project(covers[j].position));
        }
        const VarTuple ztuple(z);
        const Atom collapsed(ztuple.concat(ztuple),
                             ordered.left().slice(0, head).concat(ordered.right().slice(0, head)),
                             ordered.degree());
        b.apply(Rule::A6, witness::Collapse{ordered.arity() - head, ztuple}, collapsed);
        if (verdict.cover->side == Side::Right)
            b.swap_sides();
        b.reach_tuples(goal.left(), goal.right());
        b.raise_to(goal.degree());
        break;
    }
    case WitnessKind::GoalContradictory:
    case WitnessKind::NoCandidate:
        throw InternalError("verdict kind carries no derivation");
    }
    return std::move(b).take();
}

Derivation derive(std::span<const Atom> assumptions, const Atom& goal) {
    const auto verdict = decide(assumptions, goal);
    if (!verdict.holds)
        throw InternalError("goal is not implied by the assumptions");
    return synthesize(assumptions, goal, verdict);
}

}  // namespace exclusion
