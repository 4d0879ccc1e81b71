#include "exclusion/semantics.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string_view>

namespace exclusion {

namespace {

using View = std::vector<std::string_view>;

View project(const Row& row, const std::vector<std::size_t>& cols) {
    View out;
    out.reserve(cols.size());
    for (auto c : cols)
        out.emplace_back(row[c]);
    return out;
}

// Per-row ids of s(left) and s(right) in a shared value numbering.
struct InternedSides {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    std::size_t distinct = 0;
};

InternedSides intern(const Team& team, const Atom& atom) {
    const auto lcols = team.columns(atom.left());
    const auto rcols = team.columns(atom.right());
    std::map<View, std::size_t> ids;
    auto id_of = [&](View v) {
        auto [it, inserted] = ids.emplace(std::move(v), ids.size());
        return it->second;
    };
    InternedSides out;
    out.left.reserve(team.size());
    out.right.reserve(team.size());
    for (const auto& row : team.rows()) {
        out.left.push_back(id_of(project(row, lcols)));
        out.right.push_back(id_of(project(row, rcols)));
    }
    out.distinct = ids.size();
    return out;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

bool satisfies_exact(const Team& team, const Atom& atom) {
    if (team.empty())
        return true;
    const auto lcols = team.columns(atom.left());
    const auto rcols = team.columns(atom.right());
    std::set<View> left_values;
    for (const auto& row : team.rows())
        left_values.insert(project(row, lcols));
    return std::none_of(team.rows().begin(), team.rows().end(),
                        [&](const Row& row) { return left_values.contains(project(row, rcols)); });
}

ConflictReport conflict_report(const Team& team, const Atom& atom) {
    ConflictReport report;
    if (team.empty())
        return report;
    const auto lcols = team.columns(atom.left());
    const auto rcols = team.columns(atom.right());
    std::map<View, ConflictWitness> by_value;
    for (std::size_t r = 0; r < team.size(); ++r) {
        by_value[project(team.rows()[r], lcols)].left_rows.push_back(r);
        by_value[project(team.rows()[r], rcols)].right_rows.push_back(r);
    }
    for (auto& [value, witness] : by_value) {
        if (witness.left_rows.empty() || witness.right_rows.empty())
            continue;
        report.conflicts.emplace(ValueTuple(value.begin(), value.end()), std::move(witness));
    }
    return report;
}

std::size_t min_removal(const Team& team, const Atom& atom, const RemovalOptions& options) {
    if (team.empty())
        return 0;
    const auto sides = intern(team, atom);
    const std::size_t rows = team.size();

    // A row whose own left and right values coincide conflicts with itself.
    std::vector<bool> removed(rows, false);
    std::size_t forced = 0;
    for (std::size_t r = 0; r < rows; ++r)
        if (sides.left[r] == sides.right[r]) {
            removed[r] = true;
            ++forced;
        }

    std::vector<std::size_t> left_count(sides.distinct, 0), right_count(sides.distinct, 0);
    for (std::size_t r = 0; r < rows; ++r)
        if (!removed[r]) {
            ++left_count[sides.left[r]];
            ++right_count[sides.right[r]];
        }
    auto conflicting = [&](std::size_t id) { return left_count[id] > 0 && right_count[id] > 0; };

    // Each remaining conflict value v needs all of A_v or all of B_v removed.
    // Rows couple at most two values, so components are solved independently.
    DisjointSets components(sides.distinct);
    std::vector<std::size_t> involved;
    for (std::size_t r = 0; r < rows; ++r) {
        if (removed[r])
            continue;
        const bool l = conflicting(sides.left[r]);
        const bool rr = conflicting(sides.right[r]);
        if (l || rr)
            involved.push_back(r);
        if (l && rr)
            components.unite(sides.left[r], sides.right[r]);
    }

    std::map<std::size_t, std::vector<std::size_t>> values_by_root;
    for (std::size_t id = 0; id < sides.distinct; ++id)
        if (conflicting(id))
            values_by_root[components.find(id)].push_back(id);
    std::map<std::size_t, std::vector<std::size_t>> rows_by_root;
    for (auto r : involved) {
        const auto anchor = conflicting(sides.left[r]) ? sides.left[r] : sides.right[r];
        rows_by_root[components.find(anchor)].push_back(r);
    }

    std::size_t total = forced;
    std::vector<int> bit_of(sides.distinct, -1);
    for (const auto& [root, values] : values_by_root) {
        if (values.size() > options.max_conflict_values)
            throw CapacityError("min_removal: " + std::to_string(values.size()) +
                                " interacting conflict values exceed the limit of " +
                                std::to_string(options.max_conflict_values));
        for (std::size_t b = 0; b < values.size(); ++b)
            bit_of[values[b]] = static_cast<int>(b);
        const auto& comp_rows = rows_by_root[root];
        std::size_t best = comp_rows.size();
        const std::uint64_t masks = std::uint64_t{1} << values.size();
        // bit set: drop the left-side rows of that value; clear: the right-side rows.
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            std::size_t count = 0;
            for (auto r : comp_rows) {
                const int lb = bit_of[sides.left[r]];
                const int rb = bit_of[sides.right[r]];
                if ((lb >= 0 && ((mask >> lb) & 1)) || (rb >= 0 && !((mask >> rb) & 1)))
                    ++count;
            }
            best = std::min(best, count);
        }
        total += best;
        for (auto v : values)
            bit_of[v] = -1;
    }
    return total;
}

bool satisfies_approx(const Team& team, const Atom& atom, const RemovalOptions& options) {
    if (team.empty())
        return true;
    if (atom.degree().is_one()) {
        team.columns(atom.left());
        team.columns(atom.right());
        return true;
    }
    if (satisfies_exact(team, atom))
        return true;
    if (atom.degree().is_zero())
        return false;
    const auto removal = min_removal(team, atom, options);
    // removal <= p * |T|
    return atom.degree().compare_scaled(team.size(), removal) >= 0;
}

Rational min_degree(const Team& team, const Atom& atom, const RemovalOptions& options) {
    if (team.empty())
        throw EmptyTeam("min_degree is undefined on the empty team");
    return Rational(min_removal(team, atom, options), team.size());
}

}  // namespace exclusion
