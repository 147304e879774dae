// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ohsim/ledger.hpp"
#include "ohsim/profile.hpp"
#include "ohsim/rational.hpp"

namespace ohsim {

/// Raised when a FixedPoint-profile result's certified magnitude bound
/// exceeds 2^int_bits. There is no silent wraparound anywhere.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an op would exceed the context depth budget and
/// auto-bootstrap is disabled.
struct DepthBudgetError : std::runtime_error {
    explicit DepthBudgetError(const std::string& what) : std::runtime_error(what) {}
};

class HeContext;

/// Unencrypted slot vector; operand of pt-ct ops (masks, class constants,
/// rebalancing constants).
class PlainVec {
public:
    PlainVec() = default;
    PlainVec(std::vector<CSlot> slots, std::uint64_t ctx_id)
        : slots_(std::move(slots)), ctx_id_(ctx_id) {}

    std::size_t size() const { return slots_.size(); }
    const CSlot& operator[](std::size_t i) const { return slots_[i]; }
    CSlot& operator[](std::size_t i) { return slots_[i]; }
    const std::vector<CSlot>& slots() const { return slots_; }
    std::uint64_t ctx_id() const { return ctx_id_; }

    /// max over slots of the L1 norm; certified magnitude bound of the vector.
    Rat bound() const;

private:
    std::vector<CSlot> slots_;
    std::uint64_t ctx_id_ = 0;
};

/// Simulated ciphertext: a fixed-size slot vector plus the multiplicative
/// depth consumed so far and a certified upper bound on slot magnitudes.
///
/// depth counts every multiplication (ct-ct and pt-ct) as one level; the
/// parallel pt_free_depth counts ct-ct multiplications only, matching the
/// convention that multiplication by cleartext constants is free.
class CipherVec {
public:
    CipherVec() = default;

    std::size_t size() const { return slots_.size(); }
    const CSlot& operator[](std::size_t i) const { return slots_[i]; }
    const std::vector<CSlot>& slots() const { return slots_; }

    std::uint32_t depth() const { return depth_; }
    std::uint32_t pt_free_depth() const { return pt_free_depth_; }
    const Rat& magnitude_bound() const { return bound_; }
    std::uint64_t ctx_id() const { return ctx_id_; }

private:
    friend class HeContext;
    std::vector<CSlot> slots_;
    std::uint32_t depth_ = 0;
    std::uint32_t pt_free_depth_ = 0;
    Rat bound_;
    std::uint64_t ctx_id_ = 0;
};

/// CKKS-like SIMD context: fixed power-of-two slot count, an arithmetic
/// profile, an optional depth budget, and the cost ledger all ops report to.
///
/// Values are immutable; ops are pure functions of their inputs plus the
/// ledger side effect, so one context must stay on a single thread at a time.
/// Fan out over independent inputs with per-worker contexts and merge the
/// ledgers afterward.
class HeContext {
public:
    HeContext(std::size_t slot_count, ArithmeticProfile profile,
              std::optional<std::uint32_t> depth_budget = std::nullopt,
              bool auto_bootstrap = false, std::uint64_t seed = 0);

    std::size_t slots() const { return slot_count_; }
    const ArithmeticProfile& profile() const { return profile_; }
    std::optional<std::uint32_t> depth_budget() const { return depth_budget_; }
    bool auto_bootstrap() const { return auto_bootstrap_; }
    std::uint64_t id() const { return id_; }

    CostLedger& ledger() { return ledger_; }
    const CostLedger& ledger() const { return ledger_; }
    void reset_ledger() { ledger_ = CostLedger{}; }

    /// Toggles the per-op bound >= |slot| sanity check (on by default in
    /// tests; costs a pass over the slots).
    void set_check_invariants(bool on) { check_invariants_ = on; }

    // ---- encode / encrypt / decrypt -------------------------------------
    PlainVec encode(std::span<const Rat> values) const;         // zero-padded to s
    PlainVec encode(std::initializer_list<Rat> values) const {
        return encode(std::span<const Rat>(values.begin(), values.size()));
    }
    PlainVec encode_complex(std::span<const CSlot> values) const;
    PlainVec encode_scalar(const Rat& value) const;             // broadcast to all slots
    PlainVec encode_ints(std::span<const long> values) const;
    CipherVec encrypt(const PlainVec& p);
    CipherVec encrypt_zero();
    std::vector<CSlot> decrypt(const CipherVec& c) const { return c.slots_; }

    // ---- homomorphic ops -------------------------------------------------
    CipherVec add(const CipherVec& a, const CipherVec& b);
    CipherVec sub(const CipherVec& a, const CipherVec& b);
    CipherVec mul(const CipherVec& a, const CipherVec& b);
    CipherVec pt_mul(const PlainVec& p, const CipherVec& a);
    CipherVec plain_add(const PlainVec& p, const CipherVec& a);
    /// p - a, slot-wise. Counted as an addition; depth-free.
    CipherVec plain_sub(const PlainVec& p, const CipherVec& a);
    /// Cyclic left shift by k (any k; reduced mod s). Depth-free.
    CipherVec rotate(const CipherVec& a, long k);
    CipherVec conjugate(const CipherVec& a);
    /// Doubling rotate-and-sum: log2(len) rotations and additions. Slot i of
    /// the result holds sum_{d<len} a[(i+d) mod s]; for len == s every slot
    /// holds the total, and for aligned len-blocks the block-start slot holds
    /// that block's sum.
    CipherVec rotate_and_sum(const CipherVec& a, std::size_t len);
    /// Depth reset, value unchanged, ledger.bootstraps += 1.
    CipherVec bootstrap(const CipherVec& a);

private:
    CipherVec make_vec(std::vector<CSlot> slots, std::uint32_t depth,
                       std::uint32_t pt_free_depth, Rat bound);
    /// Applies the profile post-op transform (rounding / noise), tightens or
    /// checks bounds, enforces the overflow rule for multiplicative ops.
    void finalize(CipherVec& v, bool multiplicative);
    void enforce_budget(CipherVec& a, CipherVec& b, bool b_is_ct);
    void require_same_context(const CipherVec& a, const CipherVec& b) const;
    void note_depth(const CipherVec& v);

    std::size_t slot_count_;
    ArithmeticProfile profile_;
    std::optional<std::uint32_t> depth_budget_;
    bool auto_bootstrap_ = false;
    CostLedger ledger_;
    std::mt19937_64 rng_;
    std::uint64_t id_;
    bool check_invariants_ = true;
};

}  // namespace ohsim
