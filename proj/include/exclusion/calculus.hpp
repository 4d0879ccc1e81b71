#pragma once

#include "exclusion/model.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace exclusion {

// HYP plus the rules for approximate exclusion. Perm and Contract are macros
// over A5 (and A4) that the expander turns into primitive steps.
enum class Rule { Hyp, A1, A2, A3, A4, A5, A6, A7, A8, Perm, Contract };

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

namespace witness {

struct Append {  // A3: number of pairs appended
    std::size_t count;
    friend bool operator==(const Append&, const Append&) = default;
};
struct DropBlock {  // A4: length of the duplicated trailing block
    std::size_t length;
    friend bool operator==(const DropBlock&, const DropBlock&) = default;
};
struct SwapBlocks {  // A5: |x|, |y|, |z| of xyz | uvw
    std::array<std::size_t, 3> lengths;
    friend bool operator==(const SwapBlocks&, const SwapBlocks&) = default;
};
struct Collapse {  // A6: length of the shared suffix w and the tuple z
    std::size_t shared;
    VarTuple z;
    friend bool operator==(const Collapse&, const Collapse&) = default;
};
struct Raise {  // A7
    Rational degree;
    friend bool operator==(const Raise&, const Raise&) = default;
};
// Perm: a permutation; Contract: an injective map dropping duplicated pairs.
// Conclusion position i takes premise position source[i] (0-based).
struct Reorder {
    std::vector<std::size_t> source;
    friend bool operator==(const Reorder&, const Reorder&) = default;
};

}  // namespace witness

using StepWitness = std::variant<std::monostate, witness::Append, witness::DropBlock, witness::SwapBlocks,
                                 witness::Collapse, witness::Raise, witness::Reorder>;

struct DerivationStep {
    std::size_t index = 0;  // 0-based position in the derivation
    Atom conclusion;
    Rule rule = Rule::Hyp;
    std::vector<std::size_t> premises;
    StepWitness witness;

    friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct Derivation {
    std::vector<Atom> assumptions;
    std::vector<DerivationStep> steps;
    Atom goal;

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

// Returns the reason the step is invalid, or nothing when it checks.
std::optional<std::string> check_step(const DerivationStep& step, std::span<const Atom> assumptions,
                                      std::span<const DerivationStep> earlier);

struct CheckResult {
    bool valid = false;
    std::optional<std::size_t> failed_step;
    std::string reason;
    // Degree 0 throughout and no A7/A8: a derivation in the exact system.
    bool exact_system = false;
};

CheckResult check_derivation(const Derivation& d);

// Replaces Perm and Contract steps with chains of A5 and A4 steps.
Derivation expand_macros(const Derivation& d);

}  // namespace exclusion
