#pragma once

#include "exclusion/calculus.hpp"
#include "exclusion/decision.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace exclusion::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// {"format":1, "assumptions":[...], "goal":..., "steps":[{i, rule, premises, conclusion, witness}]}
Json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

std::string write_certificate(const Derivation& d);
Derivation read_certificate(std::string_view text);

Json verdict_to_json(std::span<const Atom> sigma, const Atom& goal, const Verdict& v);

}  // namespace exclusion::io
