// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "ohsim/simd.hpp"

namespace ohsim {

/// Context parameters as read from a JSON configuration document:
///   {"slot_count": 16384,
///    "profile": {"mode": "fixed", "frac_bits": 42, "int_bits": 16},
///    "depth_budget": 12, "auto_bootstrap": true,
///    "seed": 1, "check_invariants": false}
/// Everything except slot_count is optional.
struct ContextConfig {
    std::size_t slot_count = 1u << 15;
    ArithmeticProfile profile;
    std::optional<std::uint32_t> depth_budget;
    bool auto_bootstrap = false;
    std::uint64_t seed = 0;
    bool check_invariants = false;

    static ContextConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    HeContext make_context() const;
};

nlohmann::json ledger_to_json(const CostLedger& l);
CostLedger ledger_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const ArithmeticProfile& p);
ArithmeticProfile profile_from_json(const nlohmann::json& j);

}  // namespace ohsim
