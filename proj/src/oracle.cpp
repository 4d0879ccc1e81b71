#include "exclusion/oracle.hpp"

#include "exclusion/counterexample.hpp"
#include "exclusion/decision.hpp"
#include "exclusion/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace exclusion {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kMaxBruteRows = 20;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0)
        return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

// Number of restricted growth strings of the given length using at most
// `labels` labels: sum of Stirling numbers of the second kind.
std::uint64_t growth_strings(std::size_t length, std::size_t labels) {
    if (length == 0)
        return 1;
    const std::size_t top = std::min(length, labels);
    std::vector<std::uint64_t> s(top + 1, 0);
    s[0] = 1;  // S(0, 0)
    for (std::size_t n = 1; n <= length; ++n) {
        for (std::size_t j = std::min(n, top); j >= 1; --j)
            s[j] = sat_add(sat_mul(j, s[j]), s[j - 1]);
        s[0] = 0;
    }
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= top; ++j)
        total = sat_add(total, s[j]);
    return total;
}

struct RawTeam {
    std::size_t width = 0;
    std::size_t rows = 0;
    std::vector<std::uint8_t> cells;  // row-major

    const std::uint8_t* row(std::size_t r) const { return cells.data() + r * width; }
};

Team to_team(const RawTeam& raw, const std::vector<Variable>& vars) {
    Team team(vars);
    for (std::size_t r = 0; r < raw.rows; ++r) {
        Row row;
        row.reserve(raw.width);
        for (std::size_t c = 0; c < raw.width; ++c)
            row.push_back(std::to_string(raw.row(r)[c]));
        team.insert(std::move(row));
    }
    return team;
}

class CanonicalEnumerator {
public:
    CanonicalEnumerator(std::size_t width, std::size_t domain) : width_(width), domain_(domain) {}

    template <typename Visit>
    bool run(std::size_t rows, Visit& visit) {
        team_.width = width_;
        team_.rows = rows;
        team_.cells.assign(rows * width_, 0);
        order_.resize(rows);
        if (rows == 0)
            return visit(team_);
        return fill(0, 0, visit);
    }

private:
    template <typename Visit>
    bool fill(std::size_t cell, std::size_t used, Visit& visit) {
        const std::size_t total = team_.cells.size();
        if (cell == total)
            return !is_canonical() || visit(team_);
        const std::size_t top = std::min(used + 1, domain_);
        for (std::size_t v = 0; v < top; ++v) {
            team_.cells[cell] = static_cast<std::uint8_t>(v);
            const std::size_t next = cell + 1;
            if (width_ > 0 && next % width_ == 0 && duplicates_earlier_row(next / width_ - 1))
                continue;
            if (!fill(next, std::max(used, v + 1), visit))
                return false;
        }
        return true;
    }

    bool duplicates_earlier_row(std::size_t r) const {
        for (std::size_t q = 0; q < r; ++q)
            if (std::equal(team_.row(q), team_.row(q) + width_, team_.row(r)))
                return true;
        return false;
    }

    // Minimal among all row orders after renaming values by first occurrence.
    bool is_canonical() {
        std::iota(order_.begin(), order_.end(), 0);
        const std::size_t total = team_.cells.size();
        std::vector<int> relabel;
        while (std::next_permutation(order_.begin(), order_.end())) {
            relabel.assign(total + 1, -1);
            int next_label = 0;
            for (std::size_t i = 0; i < total; ++i) {
                const auto original = team_.row(order_[i / width_])[i % width_];
                if (relabel[original] < 0)
                    relabel[original] = next_label++;
                const auto mine = team_.cells[i];
                if (relabel[original] < mine)
                    return false;
                if (relabel[original] > mine)
                    break;
            }
        }
        return true;
    }

    std::size_t width_;
    std::size_t domain_;
    RawTeam team_;
    std::vector<std::size_t> order_;
};

template <typename Visit>
void enumerate_plain(std::size_t width, std::size_t max_rows, std::size_t domain, Visit& visit) {
    std::uint64_t row_space = 1;
    for (std::size_t i = 0; i < width; ++i)
        row_space = sat_mul(row_space, domain);
    RawTeam team;
    team.width = width;
    for (std::size_t rows = 0; rows <= max_rows && rows <= row_space; ++rows) {
        team.rows = rows;
        team.cells.assign(rows * width, 0);
        std::vector<std::uint64_t> pick(rows);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            for (std::size_t r = 0; r < rows; ++r) {
                auto code = pick[r];
                for (std::size_t c = width; c-- > 0;) {
                    team.cells[r * width + c] = static_cast<std::uint8_t>(code % domain);
                    code /= domain;
                }
            }
            if (!visit(team))
                return;
            // next combination of `rows` indices from [0, row_space)
            std::size_t i = rows;
            while (i > 0 && pick[i - 1] == row_space - rows + (i - 1))
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < rows; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
}

template <typename Visit>
void enumerate_raw(std::size_t width, std::size_t max_rows, std::size_t domain, const EnumerationOptions& options,
                   Visit&& visit) {
    if (domain == 0)
        throw CapacityError("domain size must be at least 1");
    if (domain > 256 && !options.canonical)
        throw CapacityError("domain size above 256 is not supported");
    const auto size = enumeration_size(width, max_rows, domain, options.canonical);
    if (size > options.budget)
        throw CapacityError("team space of " + (size == kSaturated ? std::string("more than 2^64") : std::to_string(size)) +
                            " candidates exceeds the budget of " + std::to_string(options.budget));
    if (options.canonical) {
        if (max_rows * width > 255)
            throw CapacityError("canonical enumeration supports at most 255 cells");
        CanonicalEnumerator e(width, std::min<std::size_t>(domain, 256));
        for (std::size_t rows = 0; rows <= max_rows; ++rows)
            if (!e.run(rows, visit))
                return;
    } else {
        enumerate_plain(width, max_rows, domain, visit);
    }
}

// One exact atom compiled to column offsets.
struct CompiledPair {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
};

CompiledPair compile(const Atom& a, const std::map<Variable, std::size_t>& column) {
    CompiledPair out;
    for (const auto& v : a.left())
        out.left.push_back(column.at(v));
    for (const auto& v : a.right())
        out.right.push_back(column.at(v));
    return out;
}

// Largest subteam free of conflicts, by checking every subset of rows.
std::size_t raw_min_removal(const RawTeam& t, const CompiledPair& a) {
    const std::size_t n = t.rows;
    if (n == 0)
        return 0;
    std::vector<std::uint32_t> conflicts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool equal = true;
            for (std::size_t c = 0; c < a.left.size() && equal; ++c)
                equal = t.row(i)[a.left[c]] == t.row(j)[a.right[c]];
            if (equal)
                conflicts[i] |= std::uint32_t{1} << j;
        }
    std::size_t best_kept = 0;
    const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    for (std::uint32_t kept = 0;; ++kept) {
        const auto size = static_cast<std::size_t>(std::popcount(kept));
        if (size > best_kept) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                if ((kept >> i) & 1)
                    ok = (conflicts[i] & kept) == 0;
            if (ok)
                best_kept = size;
        }
        if (kept == all)
            break;
    }
    return n - best_kept;
}

bool within_degree(std::size_t removal, std::size_t rows, const Rational& degree) {
    return degree.compare_scaled(rows, removal) >= 0;
}

std::map<Variable, std::size_t> column_index(const std::vector<Variable>& vars) {
    std::map<Variable, std::size_t> out;
    for (std::size_t i = 0; i < vars.size(); ++i)
        out.emplace(vars[i], i);
    return out;
}

}  // namespace

std::uint64_t enumeration_size(std::size_t variables, std::size_t max_rows, std::size_t domain_size,
                               bool canonical) {
    std::uint64_t total = 0;
    if (canonical) {
        for (std::size_t rows = 0; rows <= max_rows; ++rows)
            total = sat_add(total, growth_strings(rows * variables, domain_size));
        return total;
    }
    std::uint64_t row_space = 1;
    for (std::size_t i = 0; i < variables; ++i)
        row_space = sat_mul(row_space, domain_size);
    std::uint64_t choose = 1;  // C(row_space, rows)
    for (std::size_t rows = 0; rows <= max_rows; ++rows) {
        if (rows > 0) {
            if (rows > row_space)
                break;
            const std::uint64_t num = row_space - (rows - 1);
            // choose * num / rows stays exact in 128 bits
            const unsigned __int128 next = static_cast<unsigned __int128>(choose) * num / rows;
            choose = next > kSaturated ? kSaturated : static_cast<std::uint64_t>(next);
        }
        total = sat_add(total, choose);
    }
    return total;
}

void enumerate_teams(const std::vector<Variable>& variables, std::size_t max_rows, std::size_t domain_size,
                     const EnumerationOptions& options, const std::function<bool(const Team&)>& visit) {
    enumerate_raw(variables.size(), max_rows, domain_size, options,
                  [&](const RawTeam& raw) { return visit(to_team(raw, variables)); });
}

std::vector<Team> enumerate_teams(const std::vector<Variable>& variables, std::size_t max_rows,
                                  std::size_t domain_size, const EnumerationOptions& options) {
    std::vector<Team> out;
    enumerate_teams(variables, max_rows, domain_size, options, [&](const Team& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

OracleBounds oracle_bounds(std::span<const Atom> sigma, const Atom& goal) {
    const auto& p = goal.degree();
    require_supported_degree(p);
    if (p.is_one())
        return {1, 1};
    const auto [l, k] = choose_ratio(p, min_gap_degree(sigma, p));
    const auto n = goal.arity();
    const auto m = outside_variable_count(sigma, goal);
    return {k, domain_size_bound(n, m, l, k)};
}

bool brute_force_satisfies(const Team& team, const Atom& atom) {
    if (team.empty())
        return true;
    if (team.size() > kMaxBruteRows)
        throw CapacityError("brute force satisfaction supports at most 20 rows");
    const auto lcols = team.columns(atom.left());
    const auto rcols = team.columns(atom.right());
    const auto n = team.size();
    std::vector<std::uint32_t> conflicts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool equal = true;
            for (std::size_t c = 0; c < lcols.size() && equal; ++c)
                equal = team.rows()[i][lcols[c]] == team.rows()[j][rcols[c]];
            if (equal)
                conflicts[i] |= std::uint32_t{1} << j;
        }
    std::size_t best_kept = 0;
    for (std::uint32_t kept = 0; kept < (std::uint32_t{1} << n); ++kept) {
        const auto size = static_cast<std::size_t>(std::popcount(kept));
        if (size <= best_kept)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if ((kept >> i) & 1)
                ok = (conflicts[i] & kept) == 0;
        if (ok)
            best_kept = size;
    }
    return within_degree(n - best_kept, n, atom.degree());
}

OracleResult oracle_check(std::span<const Atom> sigma, const Atom& goal, std::size_t max_rows,
                          std::size_t domain_size, const EnumerationOptions& options) {
    if (max_rows > kMaxBruteRows)
        throw CapacityError("oracle supports at most 20 rows");
    std::vector<Atom> all{goal};
    all.insert(all.end(), sigma.begin(), sigma.end());
    const auto vars = variables_in_order(all);
    const auto column = column_index(vars);
    const auto goal_pair = compile(goal, column);
    std::vector<CompiledPair> sigma_pairs;
    for (const auto& a : sigma)
        sigma_pairs.push_back(compile(a, column));

    OracleResult result;
    enumerate_raw(vars.size(), max_rows, domain_size, options, [&](const RawTeam& t) {
        ++result.teams_examined;
        if (within_degree(raw_min_removal(t, goal_pair), t.rows, goal.degree()))
            return true;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            if (!within_degree(raw_min_removal(t, sigma_pairs[i]), t.rows, sigma[i].degree()))
                return true;
        result.implied = false;
        result.separating_team = to_team(t, vars);
        return false;
    });
    return result;
}

bool oracle_implies(std::span<const Atom> sigma, const Atom& goal, std::size_t max_rows, std::size_t domain_size,
                    const EnumerationOptions& options) {
    return oracle_check(sigma, goal, max_rows, domain_size, options).implied;
}

ProfileOracle::ProfileOracle(std::vector<Variable> variables, std::vector<Atom> universe, std::size_t max_rows,
                             std::size_t domain_size, const EnumerationOptions& options)
    : variables_(std::move(variables)), universe_(std::move(universe)) {
    if (max_rows > kMaxBruteRows)
        throw CapacityError("oracle supports at most 20 rows");
    const auto column = column_index(variables_);
    // Atoms sharing tuples share one removal computation.
    std::map<std::pair<VarTuple, VarTuple>, std::size_t> pair_ids;
    std::vector<CompiledPair> pairs;
    std::vector<std::size_t> pair_of(universe_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        const auto& a = universe_[i];
        for (const auto& v : a.variables())
            if (!column.contains(v))
                throw UnknownVariable("universe atom uses variable '" + v.name() + "' outside the team schema");
        auto [it, inserted] = pair_ids.emplace(std::pair(a.left(), a.right()), pairs.size());
        if (inserted)
            pairs.push_back(compile(a, column));
        pair_of[i] = it->second;
    }

    const std::size_t words = (universe_.size() + 63) / 64;
    std::map<Bits, std::size_t> seen;
    std::vector<std::size_t> removal(pairs.size());
    enumerate_raw(variables_.size(), max_rows, domain_size, options, [&](const RawTeam& t) {
        ++teams_examined_;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            removal[p] = raw_min_removal(t, pairs[p]);
        Bits bits(words, 0);
        for (std::size_t i = 0; i < universe_.size(); ++i)
            if (within_degree(removal[pair_of[i]], t.rows, universe_[i].degree()))
                bits[i / 64] |= std::uint64_t{1} << (i % 64);
        if (seen.emplace(bits, profiles_.size()).second) {
            profiles_.push_back(std::move(bits));
            representatives_.push_back(to_team(t, variables_));
        }
        return true;
    });
}

std::size_t ProfileOracle::index_of(const Atom& a) const {
    const auto it = std::find(universe_.begin(), universe_.end(), a);
    if (it == universe_.end())
        throw InternalError("atom is not part of the oracle universe");
    return static_cast<std::size_t>(it - universe_.begin());
}

bool ProfileOracle::implies(std::span<const std::size_t> sigma, std::size_t goal) const {
    return !separating_team(sigma, goal).has_value();
}

std::optional<Team> ProfileOracle::separating_team(std::span<const std::size_t> sigma, std::size_t goal) const {
    for (std::size_t p = 0; p < profiles_.size(); ++p) {
        const auto& bits = profiles_[p];
        if (test(bits, goal))
            continue;
        if (std::all_of(sigma.begin(), sigma.end(), [&](std::size_t s) { return test(bits, s); }))
            return representatives_[p];
    }
    return std::nullopt;
}

ProfileOracle::PairTable ProfileOracle::pair_table() const {
    PairTable table;
    const auto u = universe_.size();
    table.universe_ = u;
    table.words_ = (u + 63) / 64;
    table.empty_.assign(table.words_, 0);
    table.refuted_.assign(u * u * table.words_, 0);
    std::vector<std::size_t> members;
    for (const auto& bits : profiles_) {
        Bits missing(table.words_);
        for (std::size_t w = 0; w < table.words_; ++w)
            missing[w] = ~bits[w];
        if (u % 64 != 0)
            missing.back() &= (std::uint64_t{1} << (u % 64)) - 1;
        for (std::size_t w = 0; w < table.words_; ++w)
            table.empty_[w] |= missing[w];
        members.clear();
        for (std::size_t i = 0; i < u; ++i)
            if (test(bits, i))
                members.push_back(i);
        for (std::size_t ai = 0; ai < members.size(); ++ai)
            for (std::size_t bi = ai; bi < members.size(); ++bi) {
                auto* row = &table.refuted_[(members[ai] * u + members[bi]) * table.words_];
                for (std::size_t w = 0; w < table.words_; ++w)
                    row[w] |= missing[w];
            }
    }
    return table;
}

bool ProfileOracle::PairTable::implies(std::optional<std::size_t> a, std::optional<std::size_t> b,
                                       std::size_t goal) const {
    const std::uint64_t* row = nullptr;
    if (!a && !b) {
        row = empty_.data();
    } else {
        std::size_t i = a ? *a : *b;
        std::size_t j = b ? *b : *a;
        if (i > j)
            std::swap(i, j);
        row = &refuted_[(i * universe_ + j) * words_];
    }
    return !((row[goal / 64] >> (goal % 64)) & 1);
}

}  // namespace exclusion
