#pragma once

#include "exclusion/model.hpp"
#include "exclusion/text_format.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace support {

using exclusion::Atom;
using exclusion::Rational;
using exclusion::Row;
using exclusion::Team;
using exclusion::VarTuple;
using exclusion::Variable;

inline Atom atom(std::string_view text) { return exclusion::io::parse_atom(text); }

inline std::vector<Atom> atoms(std::initializer_list<std::string_view> texts) {
    std::vector<Atom> out;
    for (auto t : texts)
        out.push_back(atom(t));
    return out;
}

inline std::vector<Variable> vars(std::initializer_list<std::string_view> names) {
    std::vector<Variable> out;
    for (auto n : names)
        out.emplace_back(std::string(n));
    return out;
}

inline Team team(std::initializer_list<std::string_view> schema, std::vector<Row> rows) {
    Team t(vars(schema));
    for (auto& r : rows)
        t.insert(std::move(r));
    return t;
}

// Small fixed teams over x, y, u, v.
inline Team two_rows() { return team({"x", "y"}, {{"0", "0"}, {"1", "2"}}); }
inline Team three_rows() {
    return team({"x", "u", "y", "v"}, {{"0", "1", "0", "1"}, {"0", "2", "0", "2"}, {"1", "2", "2", "1"}});
}

// Fixed-seed generator so every run sees the same cases.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin() { return below(2) == 1; }

    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

    VarTuple tuple(const std::vector<Variable>& pool, std::size_t length) {
        std::vector<Variable> items;
        for (std::size_t i = 0; i < length; ++i)
            items.push_back(pick(pool));
        return VarTuple(std::move(items));
    }

    Rational degree(const std::vector<Rational>& choices) { return pick(choices); }

    Atom atom(const std::vector<Variable>& pool, std::size_t max_arity, const std::vector<Rational>& degrees) {
        const auto n = 1 + below(max_arity);
        return Atom(tuple(pool, n), tuple(pool, n), degree(degrees));
    }

    Team team(const std::vector<Variable>& schema, std::size_t max_rows, std::size_t values) {
        Team t(schema);
        const auto rows = below(max_rows + 1);
        for (std::size_t r = 0; r < rows; ++r) {
            Row row;
            for (std::size_t c = 0; c < schema.size(); ++c)
                row.push_back(std::to_string(below(values)));
            t.insert(std::move(row));
        }
        return t;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Least number of rows whose removal satisfies the exact atom, by trying every subteam.
inline std::size_t brute_min_removal(const Team& t, const Atom& a) {
    const auto n = t.size();
    const auto lc = t.columns(a.left());
    const auto rc = t.columns(a.right());
    std::size_t best = n;
    for (std::uint32_t keep = 0; keep < (1u << n); ++keep) {
        const auto kept = static_cast<std::size_t>(std::popcount(keep));
        if (n - kept >= best)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(keep >> i & 1))
                continue;
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (!(keep >> j & 1))
                    continue;
                bool eq = true;
                for (std::size_t c = 0; c < lc.size() && eq; ++c)
                    eq = t.rows()[i][lc[c]] == t.rows()[j][rc[c]];
                ok = !eq;
            }
        }
        if (ok)
            best = n - kept;
    }
    return best;
}

}  // namespace support
