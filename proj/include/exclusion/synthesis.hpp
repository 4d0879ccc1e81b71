#pragma once

#include "exclusion/calculus.hpp"
#include "exclusion/decision.hpp"

#include <span>

namespace exclusion {

// Builds a derivation of goal from the assumptions following the witness of a
// holding verdict. Throws InternalError when the verdict carries no usable witness.
Derivation synthesize(std::span<const Atom> assumptions, const Atom& goal, const Verdict& verdict);

// decide + synthesize; throws InternalError if the goal is not implied.
Derivation derive(std::span<const Atom> assumptions, const Atom& goal);

}  // namespace exclusion
