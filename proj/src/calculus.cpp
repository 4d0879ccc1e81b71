#include "exclusion/calculus.hpp"

#include "exclusion/errors.hpp"
#include "exclusion/pair_set.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

namespace exclusion {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 11> kRuleNames{{
    {Rule::Hyp, "HYP"},
    {Rule::A1, "A1"},
    {Rule::A2, "A2"},
    {Rule::A3, "A3"},
    {Rule::A4, "A4"},
    {Rule::A5, "A5"},
    {Rule::A6, "A6"},
    {Rule::A7, "A7"},
    {Rule::A8, "A8"},
    {Rule::Perm, "PERM"},
    {Rule::Contract, "CONTRACT"},
}};

using Items = std::vector<Variable>;

Items take(const VarTuple& t, std::size_t from, std::size_t count) {
    return Items(t.begin() + static_cast<std::ptrdiff_t>(from),
                 t.begin() + static_cast<std::ptrdiff_t>(from + count));
}

Items join(Items a, const Items& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool equals(const VarTuple& t, const Items& items) { return t.items() == items; }

using Verdict = std::optional<std::string>;

Verdict fail(std::string why) { return Verdict(std::move(why)); }

template <typename W>
const W* expect(const StepWitness& w) {
    return std::get_if<W>(&w);
}

Verdict same_degree(const Atom& premise, const Atom& conclusion) {
    if (premise.degree() != conclusion.degree())
        return fail("rule must keep the degree " + premise.degree().to_string());
    return std::nullopt;
}

Verdict check_a3(const Atom& p, const Atom& c, const witness::Append& w) {
    if (w.count == 0)
        return fail("A3 must append at least one pair");
    if (c.arity() != p.arity() + w.count)
        return fail("A3 conclusion length does not match the appended count");
    if (!equals(p.left(), take(c.left(), 0, p.arity())) || !equals(p.right(), take(c.right(), 0, p.arity())))
        return fail("A3 conclusion does not extend the premise");
    return same_degree(p, c);
}

Verdict check_a4(const Atom& p, const Atom& c, const witness::DropBlock& w) {
    if (w.length == 0 || c.arity() < w.length || p.arity() != c.arity() + w.length)
        return fail("A4 block length does not fit premise and conclusion");
    const auto tail = c.arity() - w.length;
    if (!equals(p.left(), join(c.left().items(), take(c.left(), tail, w.length))) ||
        !equals(p.right(), join(c.right().items(), take(c.right(), tail, w.length))))
        return fail("A4 premise is not the conclusion with its last block repeated");
    return same_degree(p, c);
}

Items swap_blocks(const VarTuple& t, const std::array<std::size_t, 3>& len) {
    return join(join(take(t, 0, len[0]), take(t, len[0] + len[1], len[2])), take(t, len[0], len[1]));
}

Verdict check_a5(const Atom& p, const Atom& c, const witness::SwapBlocks& w) {
    const auto& len = w.lengths;
    if (len[0] + len[1] + len[2] != p.arity() || p.arity() == 0)
        return fail("A5 block lengths do not add up to the premise length");
    if (c.arity() != p.arity())
        return fail("A5 must keep the length");
    if (!equals(c.left(), swap_blocks(p.left(), len)) || !equals(c.right(), swap_blocks(p.right(), len)))
        return fail("A5 conclusion is not xzy | uwv of the premise");
    return same_degree(p, c);
}

Verdict check_a6(const Atom& p, const Atom& c, const witness::Collapse& w) {
    if (w.shared >= p.arity())
        return fail("A6 shared suffix leaves nothing to collapse");
    const auto head = p.arity() - w.shared;
    if (take(p.left(), head, w.shared) != take(p.right(), head, w.shared))
        return fail("A6 premise sides do not end in the same tuple");
    if (w.z.size() != head)
        return fail("A6 tuple z must be as long as the non-shared part");
    const auto s = take(p.left(), 0, head);
    const auto t = take(p.right(), 0, head);
    if (!equals(c.left(), join(w.z.items(), w.z.items())) || !equals(c.right(), join(s, t)))
        return fail("A6 conclusion is not zz | xy of the premise");
    return same_degree(p, c);
}

Verdict check_a7(const Atom& p, const Atom& c, const witness::Raise& w) {
    if (p.left() != c.left() || p.right() != c.right())
        return fail("A7 must keep both tuples");
    if (w.degree != c.degree())
        return fail("A7 witness degree differs from the conclusion");
    if (p.degree() > c.degree())
        return fail("A7 cannot lower the degree");
    return std::nullopt;
}

Verdict check_reorder(const Atom& p, const Atom& c, const witness::Reorder& w, bool permutation) {
    if (w.source.size() != c.arity())
        return fail("reorder map length differs from the conclusion");
    std::vector<bool> used(p.arity(), false);
    for (std::size_t i = 0; i < w.source.size(); ++i) {
        const auto from = w.source[i];
        if (from >= p.arity() || used[from])
            return fail("reorder map is not injective into the premise positions");
        used[from] = true;
        if (c.left()[i] != p.left()[from] || c.right()[i] != p.right()[from])
            return fail("conclusion position " + std::to_string(i) + " does not match its source");
    }
    if (permutation) {
        if (c.arity() != p.arity())
            return fail("PERM must keep the length");
    } else {
        if (c.arity() >= p.arity())
            return fail("CONTRACT must drop at least one position");
        if (pair_set(p) != pair_set(c))
            return fail("CONTRACT may only drop duplicated pairs");
    }
    return same_degree(p, c);
}

}  // namespace

std::string_view rule_name(Rule r) {
    for (const auto& [rule, name] : kRuleNames)
        if (rule == r)
            return name;
    return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
    for (const auto& [rule, n] : kRuleNames)
        if (n == name)
            return rule;
    return std::nullopt;
}

std::optional<std::string> check_step(const DerivationStep& step, std::span<const Atom> assumptions,
                                      std::span<const DerivationStep> earlier) {
    const bool premise_free = step.rule == Rule::Hyp || step.rule == Rule::A8;
    const std::size_t wanted = premise_free ? 0 : 1;
    if (step.premises.size() != wanted)
        return fail(std::string(rule_name(step.rule)) + " takes " + std::to_string(wanted) + " premise(s)");
    for (auto p : step.premises)
        if (p >= earlier.size() || p >= step.index)
            return fail("premise index " + std::to_string(p) + " does not refer to an earlier step");

    const auto& c = step.conclusion;
    const Atom* p = premise_free ? nullptr : &earlier[step.premises.front()].conclusion;
    const auto& w = step.witness;
    auto malformed = [&] { return fail("malformed witness for " + std::string(rule_name(step.rule))); };

    switch (step.rule) {
    case Rule::Hyp:
        if (!std::holds_alternative<std::monostate>(w))
            return malformed();
        if (std::find(assumptions.begin(), assumptions.end(), c) == assumptions.end())
            return fail("HYP conclusion is not an assumption");
        return std::nullopt;
    case Rule::A1:
        if (!std::holds_alternative<std::monostate>(w))
            return malformed();
        if (!p->is_contradictory())
            return fail("A1 premise is not contradictory");
        if (!c.degree().is_zero())
            return fail("A1 concludes a degree 0 atom");
        return std::nullopt;
    case Rule::A2:
        if (!std::holds_alternative<std::monostate>(w))
            return malformed();
        if (c.left() != p->right() || c.right() != p->left())
            return fail("A2 conclusion is not the premise with sides swapped");
        return same_degree(*p, c);
    case Rule::A3:
        if (auto x = expect<witness::Append>(w))
            return check_a3(*p, c, *x);
        return malformed();
    case Rule::A4:
        if (auto x = expect<witness::DropBlock>(w))
            return check_a4(*p, c, *x);
        return malformed();
    case Rule::A5:
        if (auto x = expect<witness::SwapBlocks>(w))
            return check_a5(*p, c, *x);
        return malformed();
    case Rule::A6:
        if (auto x = expect<witness::Collapse>(w))
            return check_a6(*p, c, *x);
        return malformed();
    case Rule::A7:
        if (auto x = expect<witness::Raise>(w))
            return check_a7(*p, c, *x);
        return malformed();
    case Rule::A8:
        if (!std::holds_alternative<std::monostate>(w))
            return malformed();
        if (!c.degree().is_one())
            return fail("A8 concludes a degree 1 atom");
        return std::nullopt;
    case Rule::Perm:
        if (auto x = expect<witness::Reorder>(w))
            return check_reorder(*p, c, *x, true);
        return malformed();
    case Rule::Contract:
        if (auto x = expect<witness::Reorder>(w))
            return check_reorder(*p, c, *x, false);
        return malformed();
    }
    return fail("unknown rule");
}

CheckResult check_derivation(const Derivation& d) {
    CheckResult result;
    if (d.steps.empty()) {
        result.reason = "derivation has no steps";
        return result;
    }
    bool exact = true;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& step = d.steps[i];
        std::optional<std::string> problem;
        if (step.index != i)
            problem = "step index " + std::to_string(step.index) + " out of sequence";
        else
            problem = check_step(step, d.assumptions, std::span(d.steps).first(i));
        if (problem) {
            result.failed_step = i;
            result.reason = *problem;
            return result;
        }
        if (!step.conclusion.degree().is_zero() || step.rule == Rule::A7 || step.rule == Rule::A8)
            exact = false;
    }
    if (d.steps.back().conclusion != d.goal) {
        result.failed_step = d.steps.size() - 1;
        result.reason = "last conclusion differs from the goal";
        return result;
    }
    result.valid = true;
    result.exact_system = exact;
    return result;
}

namespace {

// Rewrites one macro step as primitive steps appended to `out`.
class MacroExpander {
public:
    MacroExpander(std::vector<DerivationStep>& out, std::size_t premise) : out_(out), current_(premise) {}

    std::size_t current() const { return current_; }

    // Tracks which original premise position sits at each place.
    void expand_reorder(Atom premise, const witness::Reorder& w, bool permutation) {
        atom_ = premise;
        std::vector<std::size_t> labels(premise.arity());
        for (std::size_t i = 0; i < labels.size(); ++i)
            labels[i] = i;

        if (!permutation) {
            std::vector<bool> kept(premise.arity(), false);
            for (auto s : w.source)
                kept[s] = true;
            for (std::size_t drop = 0; drop < premise.arity(); ++drop) {
                if (kept[drop])
                    continue;
                const VarPair pair(premise.left()[drop], premise.right()[drop]);
                std::size_t twin = premise.arity();
                for (auto s : w.source)
                    if (VarPair(premise.left()[s], premise.right()[s]) == pair) {
                        twin = s;
                        break;
                    }
                move_to_end(labels, twin);
                move_to_end(labels, drop);
                drop_last(labels);
            }
        }
        // Move the targets to the end in order; the sequence then reads w.source.
        for (std::size_t j = 0; j < w.source.size(); ++j)
            move_to_end(labels, w.source[j], labels.size() - j);
    }

private:
    void move_to_end(std::vector<std::size_t>& labels, std::size_t label, std::size_t prefix = 0) {
        if (prefix == 0)
            prefix = labels.size();
        const auto it = std::find(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(prefix), label);
        const auto pos = static_cast<std::size_t>(it - labels.begin());
        const auto n = labels.size();
        if (pos == n - 1)
            return;
        const std::array<std::size_t, 3> len{pos, 1, n - pos - 1};
        Atom next(VarTuple(swap_blocks(atom_.left(), len)), VarTuple(swap_blocks(atom_.right(), len)),
                  atom_.degree());
        emit(Rule::A5, witness::SwapBlocks{len}, next);
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(pos));
        labels.push_back(label);
    }

    void drop_last(std::vector<std::size_t>& labels) {
        const auto n = atom_.arity();
        Atom next(atom_.left().slice(0, n - 1), atom_.right().slice(0, n - 1), atom_.degree());
        emit(Rule::A4, witness::DropBlock{1}, next);
        labels.pop_back();
    }

    void emit(Rule rule, StepWitness w, const Atom& conclusion) {
        const auto index = out_.size();
        out_.push_back(DerivationStep{index, conclusion, rule, {current_}, std::move(w)});
        current_ = index;
        atom_ = conclusion;
    }

    std::vector<DerivationStep>& out_;
    std::size_t current_;
    Atom atom_{VarTuple{"_"}, VarTuple{"_"}};
};

}  // namespace

Derivation expand_macros(const Derivation& d) {
    Derivation out{d.assumptions, {}, d.goal};
    std::vector<std::size_t> remap(d.steps.size());
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& step = d.steps[i];
        if (step.rule != Rule::Perm && step.rule != Rule::Contract) {
            auto copy = step;
            copy.index = out.steps.size();
            for (auto& p : copy.premises)
                p = remap.at(p);
            remap[i] = copy.index;
            out.steps.push_back(std::move(copy));
            continue;
        }
        const auto* w = std::get_if<witness::Reorder>(&step.witness);
        if (!w || step.premises.size() != 1 || step.premises.front() >= i)
            throw InternalError("cannot expand a malformed " + std::string(rule_name(step.rule)) + " step");
        const auto premise = remap.at(step.premises.front());
        MacroExpander expander(out.steps, premise);
        expander.expand_reorder(out.steps[premise].conclusion, *w, step.rule == Rule::Perm);
        remap[i] = expander.current();
        if (out.steps[remap[i]].conclusion != step.conclusion)
            throw InternalError("macro expansion did not reach the recorded conclusion");
    }
    // A macro that expanded to nothing leaves an earlier step last.
    if (!out.steps.empty() && out.steps.back().conclusion != d.goal && remap.back() != out.steps.size() - 1)
        throw InternalError("expanded derivation does not end at the goal");
    return out;
}

}  // namespace exclusion
