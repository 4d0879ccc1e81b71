#include "exclusion/decision.hpp"

#include "exclusion/errors.hpp"

namespace exclusion {

std::string_view witness_kind_name(WitnessKind k) {
    switch (k) {
    case WitnessKind::TrivialDegreeOne: return "trivial-degree-1";
    case WitnessKind::Membership: return "membership";
    case WitnessKind::Contradictory: return "contradictory";
    case WitnessKind::Subset: return "subset";
    case WitnessKind::E6: return "e6";
    case WitnessKind::GoalContradictory: return "goal-contradictory";
    case WitnessKind::NoCandidate: return "no-candidate";
    }
    return "?";
}

void require_supported_degree(const Rational& p) {
    if (p >= Rational(1, 2) && !p.is_one())
        throw UnsupportedDegree("degree " + p.to_string() +
                                " lies in [1/2, 1); implication is only decided for p < 1/2 and p = 1");
}

std::optional<Rational> min_gap_degree(std::span<const Atom> sigma, const Rational& p) {
    std::optional<Rational> best;
    for (const auto& a : sigma)
        if (a.degree() > p && (!best || a.degree() < *best))
            best = a.degree();
    return best;
}

namespace {

Verdict accept(WitnessKind kind, int line, std::optional<std::size_t> index = std::nullopt, bool swapped = false) {
    Verdict v;
    v.holds = true;
    v.kind = kind;
    v.line = line;
    v.sigma_index = index;
    v.swapped = swapped;
    return v;
}

Verdict reject(WitnessKind kind, int line, std::span<const Atom> sigma, const Atom& goal) {
    Verdict v;
    v.holds = false;
    v.kind = kind;
    v.line = line;
    v.plan = make_plan(sigma, goal);
    return v;
}

}  // namespace

Verdict decide(std::span<const Atom> sigma, const Atom& goal) {
    const auto& p = goal.degree();
    require_supported_degree(p);
    if (p.is_one())
        return accept(WitnessKind::TrivialDegreeOne, 0);

    const auto& x = goal.left();
    const auto& y = goal.right();
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto& a = sigma[i];
        if (a.degree() > p)
            continue;
        if (a.left() == x && a.right() == y)
            return accept(WitnessKind::Membership, 1, i, false);
        if (a.left() == y && a.right() == x)
            return accept(WitnessKind::Membership, 1, i, true);
    }
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i].is_contradictory())
            return accept(WitnessKind::Contradictory, 2, i);
    if (x == y)
        return reject(WitnessKind::GoalContradictory, 3, sigma, goal);

    VariableSet all_vars = goal.variables();
    for (const auto& a : sigma) {
        all_vars.insert(a.left().begin(), a.left().end());
        all_vars.insert(a.right().begin(), a.right().end());
    }
    const CoverIndex target(goal);
    const auto& goal_pairs = target.pairs();
    auto inside = [&](const Atom& a, bool swap) {
        for (std::size_t j = 0; j < a.arity(); ++j) {
            const auto& l = swap ? a.right()[j] : a.left()[j];
            const auto& r = swap ? a.left()[j] : a.right()[j];
            if (!goal_pairs.contains(VarPair(l, r)))
                return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto& a = sigma[i];
        if (a.degree() > p)
            continue;
        if (inside(a, false))
            return accept(WitnessKind::Subset, 10, i, false);
        if (inside(a, true))
            return accept(WitnessKind::Subset, 11, i, true);
        if (auto cover = target.cover(a, all_vars)) {
            auto v = accept(WitnessKind::E6, 12, i);
            v.cover = std::move(cover);
            return v;
        }
    }
    return reject(WitnessKind::NoCandidate, 15, sigma, goal);
}

}  // namespace exclusion
