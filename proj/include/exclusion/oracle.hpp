#pragma once

#include "exclusion/model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace exclusion {

struct EnumerationOptions {
    // Skip teams that only differ by a renaming of values or an ordering of rows.
    bool canonical = true;
    // Hard cap on the number of candidate teams; exceeding it throws CapacityError.
    std::uint64_t budget = 10'000'000;
};

// Number of candidates the enumeration will inspect (saturates at UINT64_MAX).
std::uint64_t enumeration_size(std::size_t variables, std::size_t max_rows, std::size_t domain_size,
                               bool canonical);

// Calls `visit` on every team with at most max_rows rows over values
// "0".."domain_size-1". Stops early when `visit` returns false.
void enumerate_teams(const std::vector<Variable>& variables, std::size_t max_rows, std::size_t domain_size,
                     const EnumerationOptions& options, const std::function<bool(const Team&)>& visit);

std::vector<Team> enumerate_teams(const std::vector<Variable>& variables, std::size_t max_rows,
                                  std::size_t domain_size, const EnumerationOptions& options = {});

struct OracleBounds {
    std::size_t max_rows;
    std::size_t domain_size;
};

// Row and domain bounds large enough for the countermodel of this instance.
OracleBounds oracle_bounds(std::span<const Atom> sigma, const Atom& goal);

struct OracleResult {
    bool implied = true;
    std::optional<Team> separating_team;
    std::uint64_t teams_examined = 0;
};

// Brute force over the bounded team space; independent of the decision
// procedure and of min_removal.
OracleResult oracle_check(std::span<const Atom> sigma, const Atom& goal, std::size_t max_rows,
                          std::size_t domain_size, const EnumerationOptions& options = {});

bool oracle_implies(std::span<const Atom> sigma, const Atom& goal, std::size_t max_rows, std::size_t domain_size,
                    const EnumerationOptions& options = {});

// Exact-or-approximate satisfaction by subteam enumeration (rows <= 20).
bool brute_force_satisfies(const Team& team, const Atom& atom);

// Enumerates a team space once and records which atoms of a fixed universe
// each team satisfies. Implication questions over the universe are then
// answered from the distinct satisfaction profiles.
class ProfileOracle {
public:
    ProfileOracle(std::vector<Variable> variables, std::vector<Atom> universe, std::size_t max_rows,
                  std::size_t domain_size, const EnumerationOptions& options = {});

    const std::vector<Atom>& universe() const { return universe_; }
    std::size_t index_of(const Atom& a) const;
    std::size_t profile_count() const { return profiles_.size(); }
    std::uint64_t teams_examined() const { return teams_examined_; }

    bool implies(std::span<const std::size_t> sigma, std::size_t goal) const;
    // A team of the space satisfying sigma and falsifying goal, if any.
    std::optional<Team> separating_team(std::span<const std::size_t> sigma, std::size_t goal) const;

    // Answers for assumption sets of at most two atoms, precomputed.
    class PairTable {
    public:
        bool implies(std::optional<std::size_t> a, std::optional<std::size_t> b, std::size_t goal) const;

    private:
        friend class ProfileOracle;
        std::size_t universe_ = 0;
        std::size_t words_ = 0;
        std::vector<std::uint64_t> empty_;    // goals refuted with no assumptions
        std::vector<std::uint64_t> refuted_;  // [a][b] goals refuted under {a, b}
    };
    PairTable pair_table() const;

private:
    using Bits = std::vector<std::uint64_t>;
    static bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }

    std::vector<Variable> variables_;
    std::vector<Atom> universe_;
    std::vector<Bits> profiles_;
    std::vector<Team> representatives_;
    std::uint64_t teams_examined_ = 0;
};

}  // namespace exclusion
