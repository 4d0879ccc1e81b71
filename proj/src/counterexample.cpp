#include "exclusion/counterexample.hpp"

#include "exclusion/decision.hpp"
#include "exclusion/errors.hpp"
#include "exclusion/semantics.hpp"

#include <map>
#include <numeric>

namespace exclusion {

namespace {

// Bounded so that a bad degree cannot spin forever.
constexpr std::size_t kMaxTeamSize = 1'000'000;

class ValueSource {
public:
    std::string fresh() { return std::to_string(next_++); }

private:
    std::size_t next_ = 1;
};

Team fresh_row_team(const std::vector<Variable>& vars) {
    Team team(vars);
    ValueSource values;
    Row row;
    row.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
        row.push_back(values.fresh());
    team.insert(std::move(row));
    return team;
}

std::vector<Atom> goal_then_sigma(const Atom& goal, std::span<const Atom> sigma) {
    std::vector<Atom> all{goal};
    all.insert(all.end(), sigma.begin(), sigma.end());
    return all;
}

}  // namespace

std::pair<std::size_t, std::size_t> choose_ratio(const Rational& p, const std::optional<Rational>& r) {
    if (p >= Rational(1, 2))
        throw UnsupportedDegree("no counterexample ratio for degree " + p.to_string());
    for (std::size_t k = 2; k <= kMaxTeamSize; ++k) {
        const std::size_t l = p.floor_times(k) + 1;
        if (2 * l > k)
            continue;
        if (r && r->compare_scaled(k, l) < 0)  // l/k > r
            continue;
        return {l, k};
    }
    throw InternalError("no team size up to " + std::to_string(kMaxTeamSize) + " fits degree " + p.to_string());
}

CounterexamplePlan make_plan(std::span<const Atom> sigma, const Atom& goal) {
    CounterexamplePlan plan{PlanKind::Blocks, goal, std::vector<Atom>(sigma.begin(), sigma.end()), 1, 2, std::nullopt, {}, {}};
    if (goal.left() == goal.right()) {
        plan.kind = PlanKind::Unary;
        plan.l = 1;
        plan.k = 1;
        return plan;
    }
    plan.gap_degree = min_gap_degree(sigma, goal.degree());
    std::tie(plan.l, plan.k) = choose_ratio(goal.degree(), plan.gap_degree);

    const auto n = goal.arity();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (goal.left()[i] == goal.left()[j] || goal.right()[i] == goal.right()[j])
                parent[find(i)] = find(j);
    std::map<std::size_t, std::size_t> class_of_root;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = class_of_root.emplace(find(i), plan.value_classes.size());
        if (inserted)
            plan.value_classes.emplace_back();
        plan.value_classes[it->second].push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (goal.left()[i] == goal.right()[j])
                plan.column_merges.emplace_back(i, j);
    return plan;
}

CounterexamplePlan plan(std::span<const Atom> sigma, const Atom& goal) {
    auto verdict = decide(sigma, goal);
    if (verdict.holds || !verdict.plan)
        throw InternalError("counterexample requested for a goal the assumptions imply");
    return std::move(*verdict.plan);
}

Team build_team(const CounterexamplePlan& plan) {
    const auto all = goal_then_sigma(plan.goal, plan.sigma);
    const auto vars = variables_in_order(all);
    if (plan.kind == PlanKind::Unary)
        return fresh_row_team(vars);

    const auto& x = plan.goal.left();
    const auto& y = plan.goal.right();
    std::vector<std::size_t> class_of(plan.goal.arity());
    for (std::size_t c = 0; c < plan.value_classes.size(); ++c)
        for (auto i : plan.value_classes[c])
            class_of[i] = c;
    // Positions sharing a variable share a class, so the first one stands in.
    std::map<Variable, std::size_t> x_class, y_class;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x_class.emplace(x[i], class_of[i]);
        y_class.emplace(y[i], class_of[i]);
    }

    ValueSource values;
    std::map<std::pair<std::size_t, std::size_t>, std::string> block;  // (e, class) -> value
    auto block_value = [&](std::size_t e, std::size_t c) -> const std::string& {
        auto it = block.find({e, c});
        if (it == block.end())
            it = block.emplace(std::pair(e, c), values.fresh()).first;
        return it->second;
    };

    Team team(vars);
    for (std::size_t r = 0; r < plan.k; ++r) {
        Row row;
        row.reserve(vars.size());
        for (const auto& w : vars) {
            if (r < plan.l && x_class.contains(w))
                row.push_back(block_value(r, x_class.at(w)));
            else if (r >= plan.l && r < 2 * plan.l && y_class.contains(w))
                row.push_back(block_value(r - plan.l, y_class.at(w)));
            else
                row.push_back(values.fresh());
        }
        team.insert(std::move(row));
    }
    return team;
}

bool verify(const Team& team, std::span<const Atom> sigma, const Atom& goal) {
    for (const auto& a : sigma)
        if (!satisfies_approx(team, a))
            return false;
    return !satisfies_approx(team, goal);
}

Team counterexample(std::span<const Atom> sigma, const Atom& goal) {
    const auto p = plan(sigma, goal);
    auto team = build_team(p);
    if (!verify(team, sigma, goal))
        throw InternalError("constructed team (l=" + std::to_string(p.l) + ", k=" + std::to_string(p.k) +
                            ") does not separate the assumptions from the goal");
    return team;
}

Team canonical_satisfying_team(std::span<const Atom> sigma, std::span<const Atom> extra) {
    for (const auto& a : sigma)
        if (a.is_contradictory())
            throw Error("assumptions contain a contradictory atom; only the empty team satisfies them");
    std::vector<Atom> all(sigma.begin(), sigma.end());
    all.insert(all.end(), extra.begin(), extra.end());
    return fresh_row_team(variables_in_order(all));
}

std::size_t outside_variable_count(std::span<const Atom> sigma, const Atom& goal) {
    const auto inside = goal.variables();
    VariableSet outside;
    for (const auto& a : sigma)
        for (const auto& v : a.variables())
            if (!inside.contains(v))
                outside.insert(v);
    return outside.size();
}

std::size_t domain_size_bound(std::size_t n, std::size_t m, std::size_t l, std::size_t k) {
    if (l == 1 && k == 2)
        return 3 * n + 2 * m;
    return 3 * l * n + 2 * l * m + (k - 2 * l) * (2 * n + m);
}

std::size_t domain_size_bound(const CounterexamplePlan& plan) {
    const auto n = plan.goal.arity();
    const auto m = outside_variable_count(plan.sigma, plan.goal);
    if (plan.kind == PlanKind::Unary)
        return domain_size_bound(n, m, 1, 2);
    return domain_size_bound(n, m, plan.l, plan.k);
}

}  // namespace exclusion
