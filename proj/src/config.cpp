// SPDX-License-Identifier: Apache-2.0
#include "ohsim/config.hpp"

#include <sstream>

namespace ohsim {

using nlohmann::json;

CostLedger CostLedger::delta(const CostLedger& before) const {
    CostLedger d;
    d.ct_mults = ct_mults - before.ct_mults;
    d.pt_mults = pt_mults - before.pt_mults;
    d.adds = adds - before.adds;
    d.rotations = rotations - before.rotations;
    d.conjugations = conjugations - before.conjugations;
    d.bootstraps = bootstraps - before.bootstraps;
    d.max_depth = max_depth;
    return d;
}

void CostLedger::merge(const CostLedger& other) {
    ct_mults += other.ct_mults;
    pt_mults += other.pt_mults;
    adds += other.adds;
    rotations += other.rotations;
    conjugations += other.conjugations;
    bootstraps += other.bootstraps;
    max_depth = std::max(max_depth, other.max_depth);
}

std::string CostLedger::to_json() const { return ledger_to_json(*this).dump(); }

CostLedger CostLedger::from_json(const std::string& text) {
    return ledger_from_json(json::parse(text));
}

json ledger_to_json(const CostLedger& l) {
    return json{{"ct_mults", l.ct_mults},     {"pt_mults", l.pt_mults},
                {"adds", l.adds},             {"rotations", l.rotations},
                {"conjugations", l.conjugations}, {"bootstraps", l.bootstraps},
                {"max_depth", l.max_depth}};
}

CostLedger ledger_from_json(const json& j) {
    CostLedger l;
    l.ct_mults = j.value("ct_mults", 0ull);
    l.pt_mults = j.value("pt_mults", 0ull);
    l.adds = j.value("adds", 0ull);
    l.rotations = j.value("rotations", 0ull);
    l.conjugations = j.value("conjugations", 0ull);
    l.bootstraps = j.value("bootstraps", 0ull);
    l.max_depth = j.value("max_depth", 0ull);
    return l;
}

ArithmeticProfile ArithmeticProfile::fixed_point(int frac, int integer) {
    ArithmeticProfile p;
    p.mode = ArithMode::FixedPoint;
    p.frac_bits = frac;
    p.int_bits = integer;
    p.validate();
    return p;
}

ArithmeticProfile ArithmeticProfile::noisy(double sigma) {
    ArithmeticProfile p;
    p.mode = ArithMode::Noisy;
    p.noise_sigma = sigma;
    p.validate();
    return p;
}

void ArithmeticProfile::validate() const {
    if (mode == ArithMode::FixedPoint && (frac_bits <= 0 || int_bits <= 0))
        throw std::invalid_argument("FixedPoint profile requires frac_bits > 0 and int_bits > 0");
    if (mode == ArithMode::Noisy && noise_sigma < 0)
        throw std::invalid_argument("Noisy profile requires noise_sigma >= 0");
}

ArithmeticProfile ArithmeticProfile::parse(const std::string& text) {
    if (text == "exact") return exact();
    if (text.rfind("fixed:", 0) == 0) {
        int frac = 0, integer = 0;
        char colon = 0;
        std::istringstream is(text.substr(6));
        if (!(is >> frac >> colon >> integer) || colon != ':')
            throw std::invalid_argument("expected fixed:<frac_bits>:<int_bits>");
        return fixed_point(frac, integer);
    }
    if (text.rfind("noisy:", 0) == 0) {
        double sigma = std::stod(text.substr(6));
        return noisy(sigma);
    }
    throw std::invalid_argument("unknown profile: " + text);
}

std::string ArithmeticProfile::str() const {
    switch (mode) {
        case ArithMode::Exact: return "exact";
        case ArithMode::FixedPoint: {
            std::ostringstream os;
            os << "fixed:" << frac_bits << ":" << int_bits;
            return os.str();
        }
        case ArithMode::Noisy: {
            std::ostringstream os;
            os << "noisy:" << noise_sigma;
            return os.str();
        }
    }
    return "exact";
}

json profile_to_json(const ArithmeticProfile& p) {
    switch (p.mode) {
        case ArithMode::Exact: return json{{"mode", "exact"}};
        case ArithMode::FixedPoint:
            return json{{"mode", "fixed"}, {"frac_bits", p.frac_bits}, {"int_bits", p.int_bits}};
        case ArithMode::Noisy: return json{{"mode", "noisy"}, {"noise_sigma", p.noise_sigma}};
    }
    return json{{"mode", "exact"}};
}

ArithmeticProfile profile_from_json(const json& j) {
    if (j.is_string()) return ArithmeticProfile::parse(j.get<std::string>());
    std::string mode = j.value("mode", "exact");
    if (mode == "exact") return ArithmeticProfile::exact();
    if (mode == "fixed" || mode == "fixed_point")
        return ArithmeticProfile::fixed_point(j.value("frac_bits", 42), j.value("int_bits", 18));
    if (mode == "noisy") return ArithmeticProfile::noisy(j.value("noise_sigma", 0.0));
    throw std::invalid_argument("unknown profile mode: " + mode);
}

ContextConfig ContextConfig::from_json(const json& j) {
    ContextConfig c;
    if (j.contains("slot_count")) c.slot_count = j.at("slot_count").get<std::size_t>();
    if (j.contains("profile")) c.profile = profile_from_json(j.at("profile"));
    if (j.contains("depth_budget") && !j.at("depth_budget").is_null())
        c.depth_budget = j.at("depth_budget").get<std::uint32_t>();
    c.auto_bootstrap = j.value("auto_bootstrap", false);
    c.seed = j.value("seed", 0ull);
    c.check_invariants = j.value("check_invariants", false);
    return c;
}

json ContextConfig::to_json() const {
    json j{{"slot_count", slot_count},
           {"profile", profile_to_json(profile)},
           {"auto_bootstrap", auto_bootstrap},
           {"seed", seed},
           {"check_invariants", check_invariants}};
    if (depth_budget) j["depth_budget"] = *depth_budget;
    return j;
}

HeContext ContextConfig::make_context() const {
    HeContext ctx(slot_count, profile, depth_budget, auto_bootstrap, seed);
    ctx.set_check_invariants(check_invariants);
    return ctx;
}

}  // namespace ohsim
