#pragma once

#include "exclusion/rational.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exclusion {

class Variable {
public:
    // Throws ParseError unless name matches [A-Za-z_][A-Za-z0-9_]*.
    explicit Variable(std::string name);

    const std::string& name() const { return name_; }

    static bool is_identifier(std::string_view text);

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;

private:
    std::string name_;
};

using VariableSet = std::set<Variable>;

// Non-empty ordered sequence of variables; repeats allowed.
class VarTuple {
public:
    explicit VarTuple(std::vector<Variable> items);
    VarTuple(std::initializer_list<std::string_view> names);

    std::size_t size() const { return items_.size(); }
    const std::vector<Variable>& items() const { return items_; }
    const Variable& operator[](std::size_t i) const { return items_[i]; }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    // 1-based projection (x)_i.
    const Variable& project(std::size_t position) const;

    VariableSet var_set() const;
    VarTuple concat(const VarTuple& tail) const;
    VarTuple slice(std::size_t from, std::size_t count) const;

    std::string to_string() const;  // space separated

    friend bool operator==(const VarTuple&, const VarTuple&) = default;
    friend auto operator<=>(const VarTuple&, const VarTuple&) = default;

private:
    std::vector<Variable> items_;
};

// x |_p y. Degree 0 is ordinary exclusion.
class Atom {
public:
    Atom(VarTuple left, VarTuple right, Rational degree = {});

    const VarTuple& left() const { return left_; }
    const VarTuple& right() const { return right_; }
    const Rational& degree() const { return degree_; }
    std::size_t arity() const { return left_.size(); }

    bool is_contradictory() const { return left_ == right_ && degree_ < Rational(1); }

    Atom swapped() const { return Atom(right_, left_, degree_); }
    Atom with_degree(Rational degree) const { return Atom(left_, right_, degree); }
    Atom exact() const { return with_degree(Rational(0)); }

    VariableSet variables() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;

private:
    VarTuple left_;
    VarTuple right_;
    Rational degree_;
};

// Free functions mirroring the member API.
const Variable& tuple_projection(const VarTuple& t, std::size_t position);
VariableSet var_set(const VarTuple& t);
bool is_contradictory(const Atom& a);

// Every variable of the atoms, in first-occurrence order.
std::vector<Variable> variables_in_order(std::span<const Atom> atoms);

using Row = std::vector<std::string>;

// A finite set of assignments over a fixed schema. Rows keep insertion order;
// duplicates are dropped and counted.
class Team {
public:
    Team() = default;
    explicit Team(std::vector<Variable> schema);

    const std::vector<Variable>& schema() const { return schema_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    std::size_t duplicates_dropped() const { return duplicates_; }

    // Returns false when the assignment was already present.
    bool insert(Row row);

    std::optional<std::size_t> column(const Variable& v) const;
    // Column indices for a tuple; throws UnknownVariable.
    std::vector<std::size_t> columns(const VarTuple& t) const;

    const std::string& value(std::size_t row, const Variable& v) const;

    Team subteam(std::span<const std::size_t> row_indices) const;

    // Set equality over the same schema.
    friend bool operator==(const Team& a, const Team& b);

private:
    std::vector<Variable> schema_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<Row> rows_;
    std::set<Row> seen_;
    std::size_t duplicates_ = 0;
};

}  // namespace exclusion
