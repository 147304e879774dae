// SPDX-License-Identifier: Apache-2.0
#include "ohsim/simd.hpp"

#include <atomic>
#include <bit>
#include <sstream>

namespace ohsim {

namespace {

std::uint64_t next_context_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

Rat PlainVec::bound() const {
    Rat b = 0;
    for (const auto& s : slots_) {
        Rat l = s.l1();
        if (l > b) b = l;
    }
    return b;
}

HeContext::HeContext(std::size_t slot_count, ArithmeticProfile profile,
                     std::optional<std::uint32_t> depth_budget, bool auto_bootstrap,
                     std::uint64_t seed)
    : slot_count_(slot_count),
      profile_(profile),
      depth_budget_(depth_budget),
      auto_bootstrap_(auto_bootstrap),
      rng_(seed),
      id_(next_context_id()) {
    if (!is_pow2(slot_count_)) throw std::invalid_argument("slot count must be a power of two");
    profile_.validate();
}

PlainVec HeContext::encode(std::span<const Rat> values) const {
    if (values.size() > slot_count_) throw std::invalid_argument("encode: too many values for slot count");
    std::vector<CSlot> slots(slot_count_);
    for (std::size_t i = 0; i < values.size(); ++i) slots[i] = CSlot(values[i]);
    return PlainVec(std::move(slots), id_);
}

PlainVec HeContext::encode_complex(std::span<const CSlot> values) const {
    if (values.size() > slot_count_) throw std::invalid_argument("encode: too many values for slot count");
    std::vector<CSlot> slots(slot_count_);
    for (std::size_t i = 0; i < values.size(); ++i) slots[i] = values[i];
    return PlainVec(std::move(slots), id_);
}

PlainVec HeContext::encode_scalar(const Rat& value) const {
    std::vector<CSlot> slots(slot_count_, CSlot(value));
    return PlainVec(std::move(slots), id_);
}

PlainVec HeContext::encode_ints(std::span<const long> values) const {
    std::vector<Rat> rats(values.begin(), values.end());
    return encode(rats);
}

CipherVec HeContext::encrypt(const PlainVec& p) {
    if (p.ctx_id() != id_) throw std::invalid_argument("encrypt: plaintext from another context");
    CipherVec v = make_vec(p.slots(), 0, 0, p.bound());
    finalize(v, /*multiplicative=*/false);
    note_depth(v);
    return v;
}

CipherVec HeContext::encrypt_zero() {
    return make_vec(std::vector<CSlot>(slot_count_), 0, 0, Rat(0));
}

CipherVec HeContext::make_vec(std::vector<CSlot> slots, std::uint32_t depth,
                              std::uint32_t pt_free_depth, Rat bound) {
    CipherVec v;
    v.slots_ = std::move(slots);
    v.depth_ = depth;
    v.pt_free_depth_ = pt_free_depth;
    v.bound_ = std::move(bound);
    v.ctx_id_ = id_;
    return v;
}

void HeContext::require_same_context(const CipherVec& a, const CipherVec& b) const {
    if (a.ctx_id() != id_ || b.ctx_id() != id_ || a.size() != b.size())
        throw std::invalid_argument("operands belong to different contexts");
}

void HeContext::note_depth(const CipherVec& v) {
    if (v.depth() > ledger_.max_depth) ledger_.max_depth = v.depth();
}

void HeContext::finalize(CipherVec& v, bool multiplicative) {
    switch (profile_.mode) {
        case ArithMode::Exact:
            break;
        case ArithMode::FixedPoint: {
            Rat observed = 0;
            for (auto& s : v.slots_) {
                s.re = rat_round_to_grid(s.re, profile_.frac_bits);
                if (!s.is_real() || sgn(s.im) != 0) s.im = rat_round_to_grid(s.im, profile_.frac_bits);
                Rat l = s.l1();
                if (l > observed) observed = l;
            }
            // The simulator knows the slot values exactly, so the certified
            // bound is the observed post-rounding maximum. This keeps
            // correlated products (e.g. shared-x interpolation trees) from
            // tripping the overflow check spuriously while staying sound,
            // and it covers the upward drift rounding can introduce.
            v.bound_ = observed;
            if (multiplicative) {
                Rat limit = rat_pow2(profile_.int_bits);
                if (v.bound_ > limit) {
                    std::ostringstream os;
                    os << "fixed-point overflow: certified bound " << rat_to_double(v.bound_)
                       << " exceeds 2^" << profile_.int_bits;
                    throw OverflowError(os.str());
                }
            }
            break;
        }
        case ArithMode::Noisy:
            // Noise is injected by the ct-ct op bodies before finalize runs.
            break;
    }
    if (check_invariants_) {
        Rat b2 = v.bound_ * v.bound_;
        for (const auto& s : v.slots_) {
            if (b2 < s.abs2()) throw std::logic_error("magnitude_bound invariant violated");
        }
    }
}

namespace {
// Noise injection shared by the ct-ct ops in Noisy mode. Returns the max L1
// norm of the injected noise so the caller can keep the bound certified.
Rat add_noise(std::vector<CSlot>& slots, std::mt19937_64& rng, double sigma) {
    if (sigma <= 0.0) return Rat(0);
    std::normal_distribution<double> dist(0.0, sigma);
    Rat worst = 0;
    for (auto& s : slots) {
        Rat nr = rat_from_double(dist(rng));
        Rat ni = rat_from_double(dist(rng));
        s.re += nr;
        s.im += ni;
        // Quantize so denominators stay bounded across long circuits.
        s.re = rat_round_to_grid(s.re, 52);
        s.im = rat_round_to_grid(s.im, 52);
        Rat l = rat_abs(nr) + rat_abs(ni) + rat_pow2(-51);
        if (l > worst) worst = l;
    }
    return worst;
}
}  // namespace

CipherVec HeContext::add(const CipherVec& a, const CipherVec& b) {
    require_same_context(a, b);
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = a[i] + b[i];
    Rat bound = a.magnitude_bound() + b.magnitude_bound();
    if (profile_.mode == ArithMode::Noisy) bound += add_noise(out, rng_, profile_.noise_sigma);
    CipherVec v = make_vec(std::move(out), std::max(a.depth(), b.depth()),
                           std::max(a.pt_free_depth(), b.pt_free_depth()), std::move(bound));
    ledger_.adds += 1;
    finalize(v, false);
    note_depth(v);
    return v;
}

CipherVec HeContext::sub(const CipherVec& a, const CipherVec& b) {
    require_same_context(a, b);
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = a[i] - b[i];
    Rat bound = a.magnitude_bound() + b.magnitude_bound();
    if (profile_.mode == ArithMode::Noisy) bound += add_noise(out, rng_, profile_.noise_sigma);
    CipherVec v = make_vec(std::move(out), std::max(a.depth(), b.depth()),
                           std::max(a.pt_free_depth(), b.pt_free_depth()), std::move(bound));
    ledger_.adds += 1;
    finalize(v, false);
    note_depth(v);
    return v;
}

void HeContext::enforce_budget(CipherVec& a, CipherVec& b, bool b_is_ct) {
    if (!depth_budget_) return;
    auto prospective = [&] { return std::max(a.depth_, b_is_ct ? b.depth_ : 0u) + 1; };
    while (prospective() > *depth_budget_) {
        if (!auto_bootstrap_) {
            throw DepthBudgetError("multiplication would exceed the context depth budget");
        }
        // Refresh the deeper operand; value is unchanged in this model.
        CipherVec& deeper = (b_is_ct && b.depth_ > a.depth_) ? b : a;
        if (deeper.depth_ == 0) throw DepthBudgetError("depth budget too small to ever multiply");
        deeper.depth_ = 0;
        deeper.pt_free_depth_ = 0;
        ledger_.bootstraps += 1;
    }
}

CipherVec HeContext::mul(const CipherVec& a_in, const CipherVec& b_in) {
    require_same_context(a_in, b_in);
    CipherVec a = a_in, b = b_in;
    enforce_budget(a, b, /*b_is_ct=*/true);
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = a[i] * b[i];
    Rat bound = a.magnitude_bound() * b.magnitude_bound();
    if (profile_.mode == ArithMode::Noisy) bound += add_noise(out, rng_, profile_.noise_sigma);
    CipherVec v = make_vec(std::move(out), std::max(a.depth(), b.depth()) + 1,
                           std::max(a.pt_free_depth(), b.pt_free_depth()) + 1, std::move(bound));
    ledger_.ct_mults += 1;
    finalize(v, true);
    note_depth(v);
    return v;
}

CipherVec HeContext::pt_mul(const PlainVec& p, const CipherVec& a_in) {
    if (p.ctx_id() != id_) throw std::invalid_argument("pt_mul: plaintext from another context");
    CipherVec a = a_in, dummy;
    enforce_budget(a, dummy, /*b_is_ct=*/false);
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = p[i] * a[i];
    Rat bound = p.bound() * a.magnitude_bound();
    CipherVec v = make_vec(std::move(out), a.depth() + 1, a.pt_free_depth(), std::move(bound));
    ledger_.pt_mults += 1;
    finalize(v, true);
    note_depth(v);
    return v;
}

CipherVec HeContext::plain_add(const PlainVec& p, const CipherVec& a) {
    if (p.ctx_id() != id_ || a.ctx_id() != id_) throw std::invalid_argument("plain_add: context mismatch");
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = p[i] + a[i];
    CipherVec v = make_vec(std::move(out), a.depth(), a.pt_free_depth(),
                           p.bound() + a.magnitude_bound());
    ledger_.adds += 1;
    finalize(v, false);
    note_depth(v);
    return v;
}

CipherVec HeContext::plain_sub(const PlainVec& p, const CipherVec& a) {
    if (p.ctx_id() != id_ || a.ctx_id() != id_) throw std::invalid_argument("plain_sub: context mismatch");
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = p[i] - a[i];
    CipherVec v = make_vec(std::move(out), a.depth(), a.pt_free_depth(),
                           p.bound() + a.magnitude_bound());
    ledger_.adds += 1;
    finalize(v, false);
    note_depth(v);
    return v;
}

CipherVec HeContext::rotate(const CipherVec& a, long k) {
    if (a.ctx_id() != id_) throw std::invalid_argument("rotate: context mismatch");
    long s = static_cast<long>(slot_count_);
    long shift = ((k % s) + s) % s;
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i)
        out[i] = a[(i + static_cast<std::size_t>(shift)) % slot_count_];
    CipherVec v = make_vec(std::move(out), a.depth(), a.pt_free_depth(), a.magnitude_bound());
    ledger_.rotations += 1;
    note_depth(v);
    return v;
}

CipherVec HeContext::conjugate(const CipherVec& a) {
    if (a.ctx_id() != id_) throw std::invalid_argument("conjugate: context mismatch");
    std::vector<CSlot> out(slot_count_);
    for (std::size_t i = 0; i < slot_count_; ++i) out[i] = a[i].conj();
    CipherVec v = make_vec(std::move(out), a.depth(), a.pt_free_depth(), a.magnitude_bound());
    ledger_.conjugations += 1;
    note_depth(v);
    return v;
}

CipherVec HeContext::rotate_and_sum(const CipherVec& a, std::size_t len) {
    if (!is_pow2(len) || len > slot_count_)
        throw std::invalid_argument("rotate_and_sum: len must be a power of two <= slot count");
    CipherVec acc = a;
    for (std::size_t step = 1; step < len; step <<= 1) {
        acc = add(acc, rotate(acc, static_cast<long>(step)));
    }
    return acc;
}

CipherVec HeContext::bootstrap(const CipherVec& a) {
    if (a.ctx_id() != id_) throw std::invalid_argument("bootstrap: context mismatch");
    CipherVec v = a;
    v.depth_ = 0;
    v.pt_free_depth_ = 0;
    ledger_.bootstraps += 1;
    return v;
}

}  // namespace ohsim
