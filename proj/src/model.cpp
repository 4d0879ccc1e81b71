#include "exclusion/model.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <cctype>

namespace exclusion {

bool Variable::is_identifier(std::string_view text) {
    if (text.empty())
        return false;
    const auto head = static_cast<unsigned char>(text.front());
    if (!(std::isalpha(head) || head == '_'))
        return false;
    return std::all_of(text.begin() + 1, text.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

Variable::Variable(std::string name) : name_(std::move(name)) {
    if (!is_identifier(name_))
        throw ParseError("invalid variable name '" + name_ + "'");
}

VarTuple::VarTuple(std::vector<Variable> items) : items_(std::move(items)) {
    if (items_.empty())
        throw ArityError("variable tuple must not be empty");
}

VarTuple::VarTuple(std::initializer_list<std::string_view> names) {
    items_.reserve(names.size());
    for (auto n : names)
        items_.emplace_back(std::string(n));
    if (items_.empty())
        throw ArityError("variable tuple must not be empty");
}

const Variable& VarTuple::project(std::size_t position) const {
    if (position < 1 || position > items_.size())
        throw ArityError("projection position " + std::to_string(position) +
                         " out of range 1.." + std::to_string(items_.size()));
    return items_[position - 1];
}

VariableSet VarTuple::var_set() const { return VariableSet(items_.begin(), items_.end()); }

VarTuple VarTuple::concat(const VarTuple& tail) const {
    auto joined = items_;
    joined.insert(joined.end(), tail.items_.begin(), tail.items_.end());
    return VarTuple(std::move(joined));
}

VarTuple VarTuple::slice(std::size_t from, std::size_t count) const {
    if (from + count > items_.size())
        throw ArityError("tuple slice out of range");
    return VarTuple(std::vector<Variable>(items_.begin() + static_cast<std::ptrdiff_t>(from),
                                          items_.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

std::string VarTuple::to_string() const {
    std::string out;
    for (const auto& v : items_) {
        if (!out.empty())
            out += ' ';
        out += v.name();
    }
    return out;
}

Atom::Atom(VarTuple left, VarTuple right, Rational degree)
    : left_(std::move(left)), right_(std::move(right)), degree_(degree) {
    if (left_.size() != right_.size())
        throw ArityError("exclusion atom sides differ in length (" + std::to_string(left_.size()) +
                         " vs " + std::to_string(right_.size()) + ")");
    if (degree_ > Rational(1))
        throw ParseError("approximation degree " + degree_.to_string() + " exceeds 1");
}

VariableSet Atom::variables() const {
    auto vars = left_.var_set();
    vars.insert(right_.begin(), right_.end());
    return vars;
}

const Variable& tuple_projection(const VarTuple& t, std::size_t position) { return t.project(position); }
VariableSet var_set(const VarTuple& t) { return t.var_set(); }
bool is_contradictory(const Atom& a) { return a.is_contradictory(); }

std::vector<Variable> variables_in_order(std::span<const Atom> atoms) {
    std::vector<Variable> order;
    VariableSet seen;
    auto visit = [&](const VarTuple& t) {
        for (const auto& v : t)
            if (seen.insert(v).second)
                order.push_back(v);
    };
    for (const auto& a : atoms) {
        visit(a.left());
        visit(a.right());
    }
    return order;
}

Team::Team(std::vector<Variable> schema) : schema_(std::move(schema)) {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (!index_.emplace(schema_[i].name(), i).second)
            throw ParseError("duplicate column '" + schema_[i].name() + "'");
}

bool Team::insert(Row row) {
    if (row.size() != schema_.size())
        throw ArityError("row has " + std::to_string(row.size()) + " cells, schema has " +
                         std::to_string(schema_.size()));
    if (!seen_.insert(row).second) {
        ++duplicates_;
        return false;
    }
    rows_.push_back(std::move(row));
    return true;
}

std::optional<std::size_t> Team::column(const Variable& v) const {
    if (auto it = index_.find(v.name()); it != index_.end())
        return it->second;
    return std::nullopt;
}

std::vector<std::size_t> Team::columns(const VarTuple& t) const {
    std::vector<std::size_t> out;
    out.reserve(t.size());
    for (const auto& v : t) {
        auto c = column(v);
        if (!c)
            throw UnknownVariable("variable '" + v.name() + "' is not a column of the team");
        out.push_back(*c);
    }
    return out;
}

const std::string& Team::value(std::size_t row, const Variable& v) const {
    auto c = column(v);
    if (!c)
        throw UnknownVariable("variable '" + v.name() + "' is not a column of the team");
    return rows_.at(row)[*c];
}

Team Team::subteam(std::span<const std::size_t> row_indices) const {
    Team out(schema_);
    for (auto i : row_indices)
        out.insert(rows_.at(i));
    return out;
}

bool operator==(const Team& a, const Team& b) { return a.schema_ == b.schema_ && a.seen_ == b.seen_; }

}  // namespace exclusion
