// SPDX-License-Identifier: Apache-2.0
#include "ohsim/comparators.hpp"

#include <cmath>
#include <stdexcept>

#include "ohsim/representations.hpp"

namespace ohsim::cmp {

EqConfig EqConfig::for_domain(long n) {
    EqConfig cfg;
    cfg.domain_bound = n;
    cfg.sharpen_iters = static_cast<int>(repr::ceil_log2(n)) + 1;
    cfg.beta = cfg.error_bound();
    return cfg;
}

double EqConfig::error_bound() const {
    // t(d=1) = 1 - 1/n^2 raised to 4^sharpen_iters by the squaring rounds.
    double n = static_cast<double>(domain_bound);
    double exponent = std::pow(4.0, sharpen_iters);
    return std::exp(exponent * std::log1p(-1.0 / (n * n)));
}

void EqConfig::validate() const {
    if (alpha <= 0 || sharpen_iters < 1 || domain_bound < 2)
        throw std::invalid_argument("EqConfig: alpha > 0, sharpen_iters >= 1, domain_bound >= 2 required");
    if (beta < 0) throw std::invalid_argument("EqConfig: beta must be >= 0");
}

namespace {

/// Shared tail of eq_approx: t = 1 - u^2 with u = (x - y)/n already formed,
/// then sharpen_iters rounds of t <- t^4.
CipherVec sharpen(HeContext& ctx, CipherVec u, const EqConfig& cfg) {
    CipherVec u2 = ctx.mul(u, u);
    CipherVec t = ctx.plain_sub(ctx.encode_scalar(Rat(1)), u2);
    for (int i = 0; i < cfg.sharpen_iters; ++i) {
        t = ctx.mul(t, t);
        t = ctx.mul(t, t);
    }
    return t;
}

}  // namespace

CipherVec eq_approx(HeContext& ctx, const CipherVec& x, const CipherVec& y, const EqConfig& cfg) {
    cfg.validate();
    CipherVec d = ctx.sub(x, y);
    CipherVec u = ctx.pt_mul(ctx.encode_scalar(Rat(1, cfg.domain_bound)), d);
    return sharpen(ctx, std::move(u), cfg);
}

CipherVec eq_approx(HeContext& ctx, const CipherVec& x, const PlainVec& y, const EqConfig& cfg) {
    cfg.validate();
    std::vector<Rat> neg(ctx.slots());
    for (std::size_t i = 0; i < ctx.slots(); ++i) {
        CSlot s = y[i];
        neg[i] = -s.re;
    }
    CipherVec d = ctx.plain_add(ctx.encode(neg), x);
    CipherVec u = ctx.pt_mul(ctx.encode_scalar(Rat(1, cfg.domain_bound)), d);
    return sharpen(ctx, std::move(u), cfg);
}

namespace {

CipherVec xnor_gate(HeContext& ctx, const CipherVec& a, const CipherVec& b) {
    CipherVec d = ctx.sub(a, b);
    CipherVec d2 = ctx.mul(d, d);
    return ctx.plain_sub(ctx.encode_scalar(Rat(1)), d2);
}

CipherVec and_tree(HeContext& ctx, std::vector<CipherVec> items) {
    while (items.size() > 1) {
        std::vector<CipherVec> next;
        next.reserve((items.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < items.size(); i += 2)
            next.push_back(ctx.mul(items[i], items[i + 1]));
        if (items.size() % 2) next.push_back(items.back());
        items = std::move(next);
    }
    return items.front();
}

void check_pair(const BitVecPair& p) {
    if (p.a.empty() || p.a.size() != p.b.size())
        throw std::invalid_argument("BitVecPair: need equal nonzero bit counts");
}

}  // namespace

CipherVec bitvec_equal(HeContext& ctx, const BitVecPair& p) {
    check_pair(p);
    std::vector<CipherVec> xnors;
    xnors.reserve(p.width());
    for (std::size_t i = 0; i < p.width(); ++i) xnors.push_back(xnor_gate(ctx, p.a[i], p.b[i]));
    return and_tree(ctx, std::move(xnors));
}

CipherVec zero_test(HeContext& ctx, const CipherVec& s, long domain_n, int zt_iters) {
    if (domain_n < 1 || zt_iters < 0) throw std::invalid_argument("zero_test: bad parameters");
    // v = 1 - s/n, then zt_iters squarings: exactly 1 at s=0, <= (1-1/n)^(2^k)
    // for integer s >= 1 (s <= n by construction of the callers).
    CipherVec scaled = ctx.pt_mul(ctx.encode_scalar(Rat(1, domain_n)), s);
    CipherVec v = ctx.plain_sub(ctx.encode_scalar(Rat(1)), scaled);
    for (int i = 0; i < zt_iters; ++i) v = ctx.mul(v, v);
    return v;
}

double zero_test_bound(long domain_n, int zt_iters) {
    return std::exp(std::pow(2.0, zt_iters) * std::log1p(-1.0 / static_cast<double>(domain_n)));
}

int default_zt_iters(long bit_width) { return static_cast<int>(repr::ceil_log2(bit_width)) + 3; }

CipherVec bitvec_equal_xorsum(HeContext& ctx, const BitVecPair& p, int zt_iters) {
    check_pair(p);
    CipherVec sum;
    bool first = true;
    for (std::size_t i = 0; i < p.width(); ++i) {
        CipherVec d = ctx.sub(p.a[i], p.b[i]);
        CipherVec x = ctx.mul(d, d);  // XOR on clean bits
        sum = first ? x : ctx.add(sum, x);
        first = false;
    }
    return zero_test(ctx, sum, static_cast<long>(p.width()), zt_iters);
}

ComplexBitPack pack_bits_complex(HeContext& ctx, const BitVecPair& p) {
    check_pair(p);
    if (p.width() % 2 != 0) throw std::invalid_argument("complex packing needs an even bit count");
    ComplexBitPack out;
    auto pack = [&ctx](const std::vector<CipherVec>& bits, std::size_t i) {
        // a[2i] + i * a[2i+1], formed client-side: decrypt is the simulator's
        // read, so this is a re-encode of the two bit vectors.
        return std::pair<const CipherVec*, const CipherVec*>(&bits[2 * i], &bits[2 * i + 1]);
    };
    for (std::size_t i = 0; i < p.width() / 2; ++i) {
        auto [alo, ahi] = pack(p.a, i);
        auto [blo, bhi] = pack(p.b, i);
        std::vector<CSlot> sa(ctx.slots()), sb(ctx.slots());
        for (std::size_t k = 0; k < ctx.slots(); ++k) {
            sa[k] = CSlot((*alo)[k].re, (*ahi)[k].re);
            sb[k] = CSlot((*blo)[k].re, (*bhi)[k].re);
        }
        out.a.push_back(ctx.encrypt(ctx.encode_complex(sa)));
        out.b.push_back(ctx.encrypt(ctx.encode_complex(sb)));
    }
    return out;
}

CipherVec bitvec_equal_complex(HeContext& ctx, const ComplexBitPack& p, int zt_iters) {
    if (p.a.empty() || p.a.size() != p.b.size())
        throw std::invalid_argument("ComplexBitPack: need equal nonzero vector counts");
    long n_bits = static_cast<long>(2 * p.a.size());
    CipherVec sum;
    bool first = true;
    for (std::size_t i = 0; i < p.a.size(); ++i) {
        CipherVec d = ctx.sub(p.a[i], p.b[i]);
        CipherVec norm = ctx.mul(d, ctx.conjugate(d));  // |d|^2, real
        sum = first ? norm : ctx.add(sum, norm);
        first = false;
    }
    return zero_test(ctx, sum, n_bits, zt_iters);
}

CipherVec ge_via_maps(HeContext& ctx, const CipherVec& greater_map_a, const CipherVec& onehot_b) {
    CipherVec prod = ctx.mul(greater_map_a, onehot_b);
    return ctx.rotate_and_sum(prod, ctx.slots());
}

SlotRef ge_via_maps_plain_b(const CipherVec& greater_map_a, long b) {
    if (b < 0 || static_cast<std::size_t>(b) >= greater_map_a.size())
        throw std::invalid_argument("ge_via_maps_plain_b: slot out of range");
    return SlotRef{&greater_map_a, b};
}

CipherVec range_check(HeContext& ctx, const CipherVec& onehot, long a, long b, long n,
                      RangePath path) {
    if (a > b || b >= n) throw std::invalid_argument("range_check: need a <= b < n");
    if (path == RangePath::IntervalMask) {
        std::vector<Rat> mask(ctx.slots(), Rat(0));
        for (long i = a; i <= b; ++i) mask[static_cast<std::size_t>(i)] = 1;
        CipherVec prod = ctx.pt_mul(ctx.encode(mask), onehot);
        return ctx.rotate_and_sum(prod, ctx.slots());
    }
    // AND of a >=a test and a <=b test on the same map: two plaintext-mask
    // dot products and one ct-ct mult.
    std::vector<Rat> ge_mask(ctx.slots(), Rat(0)), le_mask(ctx.slots(), Rat(0));
    for (long i = a; i < n; ++i) ge_mask[static_cast<std::size_t>(i)] = 1;
    for (long i = 0; i <= b; ++i) le_mask[static_cast<std::size_t>(i)] = 1;
    CipherVec t1 = ctx.rotate_and_sum(ctx.pt_mul(ctx.encode(ge_mask), onehot), ctx.slots());
    CipherVec t2 = ctx.rotate_and_sum(ctx.pt_mul(ctx.encode(le_mask), onehot), ctx.slots());
    return ctx.mul(t1, t2);
}

}  // namespace ohsim::cmp
