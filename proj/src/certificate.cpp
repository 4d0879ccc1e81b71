#include "exclusion/certificate.hpp"

#include "exclusion/counterexample.hpp"
#include "exclusion/errors.hpp"
#include "exclusion/text_format.hpp"

namespace exclusion::io {

namespace {

Json witness_to_json(const StepWitness& w) {
    Json out = Json::object();
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, witness::Append>) {
                out["appended"] = x.count;
            } else if constexpr (std::is_same_v<T, witness::DropBlock>) {
                out["block"] = x.length;
            } else if constexpr (std::is_same_v<T, witness::SwapBlocks>) {
                out["blocks"] = {x.lengths[0], x.lengths[1], x.lengths[2]};
            } else if constexpr (std::is_same_v<T, witness::Collapse>) {
                out["shared"] = x.shared;
                out["z"] = x.z.to_string();
            } else if constexpr (std::is_same_v<T, witness::Raise>) {
                out["degree"] = x.degree.to_string();
            } else if constexpr (std::is_same_v<T, witness::Reorder>) {
                out["source"] = x.source;
            }
        },
        w);
    return out;
}

VarTuple parse_tuple(const std::string& text) {
    // Reuse the atom grammar for a bare variable list.
    return parse_atom("excl(" + text + " ; " + text + ")").left();
}

StepWitness witness_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("witness must be an object");
    if (j.empty())
        return std::monostate{};
    if (j.size() == 1 && j.contains("appended"))
        return witness::Append{j.at("appended").get<std::size_t>()};
    if (j.size() == 1 && j.contains("block"))
        return witness::DropBlock{j.at("block").get<std::size_t>()};
    if (j.size() == 1 && j.contains("blocks")) {
        const auto b = j.at("blocks").get<std::vector<std::size_t>>();
        if (b.size() != 3)
            throw ParseError("A5 witness needs three block lengths");
        return witness::SwapBlocks{{b[0], b[1], b[2]}};
    }
    if (j.size() == 2 && j.contains("shared") && j.contains("z"))
        return witness::Collapse{j.at("shared").get<std::size_t>(), parse_tuple(j.at("z").get<std::string>())};
    if (j.size() == 1 && j.contains("degree"))
        return witness::Raise{Rational::parse(j.at("degree").get<std::string>())};
    if (j.size() == 1 && j.contains("source"))
        return witness::Reorder{j.at("source").get<std::vector<std::size_t>>()};
    throw ParseError("unrecognised witness " + j.dump());
}

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace

Json derivation_to_json(const Derivation& d) {
    Json j;
    j["format"] = kFormatVersion;
    j["assumptions"] = Json::array();
    for (const auto& a : d.assumptions)
        j["assumptions"].push_back(render_atom(a));
    j["goal"] = render_atom(d.goal);
    j["steps"] = Json::array();
    for (const auto& s : d.steps) {
        Json step;
        step["i"] = s.index;
        step["rule"] = std::string(rule_name(s.rule));
        step["premises"] = s.premises;
        step["conclusion"] = render_atom(s.conclusion);
        step["witness"] = witness_to_json(s.witness);
        j["steps"].push_back(std::move(step));
    }
    return j;
}

Derivation derivation_from_json(const Json& j) {
    try {
        if (j.at("format").get<int>() != kFormatVersion)
            throw ParseError("unsupported certificate format " + j.at("format").dump());
        std::vector<Atom> assumptions;
        for (const auto& a : j.at("assumptions"))
            assumptions.push_back(parse_atom(a.get<std::string>()));
        Derivation d{std::move(assumptions), {}, parse_atom(j.at("goal").get<std::string>())};
        for (const auto& s : j.at("steps")) {
            const auto name = s.at("rule").get<std::string>();
            const auto rule = rule_from_name(name);
            if (!rule)
                throw ParseError("unknown rule '" + name + "'");
            d.steps.push_back(DerivationStep{s.at("i").get<std::size_t>(),
                                             parse_atom(s.at("conclusion").get<std::string>()), *rule,
                                             s.at("premises").get<std::vector<std::size_t>>(),
                                             witness_from_json(s.at("witness"))});
        }
        return d;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

std::string write_certificate(const Derivation& d) { return derivation_to_json(d).dump(2) + "\n"; }

Derivation read_certificate(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("certificate is not JSON: ") + e.what());
    }
    return derivation_from_json(j);
}

Json verdict_to_json(std::span<const Atom> sigma, const Atom& goal, const Verdict& v) {
    Json j;
    j["format"] = kFormatVersion;
    j["goal"] = render_atom(goal);
    j["assumptions"] = sigma.size();
    j["holds"] = v.holds;
    Json w;
    w["kind"] = std::string(witness_kind_name(v.kind));
    w["line"] = v.line;
    if (v.sigma_index) {
        w["assumption"] = *v.sigma_index;
        w["atom"] = render_atom(sigma[*v.sigma_index]);
    }
    if (v.kind == WitnessKind::Membership || v.kind == WitnessKind::Subset)
        w["swapped"] = v.swapped;
    if (v.cover) {
        w["side"] = side_name(v.cover->side);
        w["covers"] = Json::array();
        for (const auto& c : v.cover->covers)
            w["covers"].push_back(
                Json{{"pair", {c.pair.first.name(), c.pair.second.name()}}, {"position", c.position}});
    }
    j["witness"] = std::move(w);
    if (v.plan) {
        Json p;
        p["kind"] = v.plan->kind == PlanKind::Unary ? "unary" : "blocks";
        p["l"] = v.plan->l;
        p["k"] = v.plan->k;
        if (v.plan->gap_degree)
            p["gap_degree"] = v.plan->gap_degree->to_string();
        p["domain_bound"] = domain_size_bound(*v.plan);
        j["counterexample"] = std::move(p);
    }
    return j;
}

}  // namespace exclusion::io
