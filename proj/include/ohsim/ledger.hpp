// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace ohsim {

/// Operation counters for one computation. Counters only ever grow; use
/// snapshots and delta() to meter a single stage.
struct CostLedger {
    std::uint64_t ct_mults = 0;
    std::uint64_t pt_mults = 0;
    std::uint64_t adds = 0;
    std::uint64_t rotations = 0;
    std::uint64_t conjugations = 0;
    std::uint64_t bootstraps = 0;
    std::uint64_t max_depth = 0;

    /// Counter-wise difference vs. an earlier snapshot of the same ledger.
    /// max_depth carries the current (end-of-stage) value.
    CostLedger delta(const CostLedger& before) const;

    /// Sum counters from a per-worker ledger; max_depth takes the maximum.
    void merge(const CostLedger& other);

    std::uint64_t total_ops() const {
        return ct_mults + pt_mults + adds + rotations + conjugations + bootstraps;
    }

    std::string to_json() const;
    static CostLedger from_json(const std::string& text);

    bool operator==(const CostLedger&) const = default;
};

}  // namespace ohsim
