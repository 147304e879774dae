// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ohsim/simd.hpp"

namespace ohsim::cmp {

/// Parameters of the approximate equality circuit over integer inputs in
/// [0, domain_bound). The circuit computes t = 1 - ((x-y)/n)^2 and then
/// applies sharpen_iters rounds of t <- t^4 (two squarings per round), so
///   Eq(x,x) = 1 exactly, and
///   |Eq(x,y)| <= (1 - 1/n^2)^(4^sharpen_iters) for x != y.
/// Each round costs 2 ct mults and depth 2; the advertised depth below is a
/// contract the ledger must reproduce exactly.
struct EqConfig {
    double alpha = 1.0;      // input separation: integers differing by >= alpha count as unequal
    double beta = 0.0;       // advertised output tolerance (derived when 0)
    int sharpen_iters = 4;
    long domain_bound = 16;

    /// Default tuning for a domain of size n: ceil(log2 n) + 1 rounds, which
    /// drives the worst-case output error to about e^-4 ~ 0.018 for any
    /// power-of-two n (and below 0.02 for the n = 100 sweep).
    static EqConfig for_domain(long n);

    int advertised_depth() const { return 2 + 2 * sharpen_iters; }
    /// ct-ct mults per evaluation (the scale-by-1/n pt mult is extra).
    long advertised_ct_mults() const { return 1 + 2L * sharpen_iters; }
    /// Worst-case |output| over unequal integer pairs, from the closed form.
    double error_bound() const;

    void validate() const;
};

/// Approximate slot-wise equality; inputs hold integers in [0, cfg.domain_bound).
CipherVec eq_approx(HeContext& ctx, const CipherVec& x, const CipherVec& y, const EqConfig& cfg);
CipherVec eq_approx(HeContext& ctx, const CipherVec& x, const PlainVec& y, const EqConfig& cfg);

/// Two n-bit numbers as parallel lists of bit ciphertexts.
struct BitVecPair {
    std::vector<CipherVec> a;
    std::vector<CipherVec> b;
    std::size_t width() const { return a.size(); }
};

/// AND over per-bit XNORs, XNOR(x,y) = 1 - (x-y)^2. Exact on clean bits:
/// n XNOR mults plus a balanced AND tree, depth ceil(log2 n) + 1.
CipherVec bitvec_equal(HeContext& ctx, const BitVecPair& p);

/// XOR-sum variant: s = sum (a_i - b_i)^2, then the repeated-squaring zero
/// test (1 - s/n)^(2^zt_iters): n + zt_iters ct mults.
CipherVec bitvec_equal_xorsum(HeContext& ctx, const BitVecPair& p, int zt_iters);

/// Pairs of bits packed into complex slots: a_pack[i] = a[2i] + i*a[2i+1].
struct ComplexBitPack {
    std::vector<CipherVec> a;  // n/2 packed vectors
    std::vector<CipherVec> b;
};

/// Builds the packed form from a BitVecPair (client-side packing; no HE cost).
ComplexBitPack pack_bits_complex(HeContext& ctx, const BitVecPair& p);

/// Complex-norm variant: s = sum d * conj(d) with d = a_pack - b_pack;
/// n/2 mults + n/2 conjugations + the zero test.
CipherVec bitvec_equal_complex(HeContext& ctx, const ComplexBitPack& p, int zt_iters);

/// (1 - s/n)^(2^zt_iters): exactly 1 at s = 0, and at most
/// (1 - 1/n)^(2^zt_iters) for integer s in [1, n].
CipherVec zero_test(HeContext& ctx, const CipherVec& s, long domain_n, int zt_iters);
double zero_test_bound(long domain_n, int zt_iters);
int default_zt_iters(long bit_width);

/// Strict b > a from a greater map of a and an encrypted one-hot of b:
/// one vector mult over the n map slots plus a rotate-and-sum, depth 1.
CipherVec ge_via_maps(HeContext& ctx, const CipherVec& greater_map_a, const CipherVec& onehot_b);

/// Plaintext-b path: the answer is already sitting in slot b of the map;
/// zero HE operations.
struct SlotRef {
    const CipherVec* vec;
    long slot;
};
SlotRef ge_via_maps_plain_b(const CipherVec& greater_map_a, long b);

enum class RangePath { TwoMapTests, IntervalMask };

/// 1 iff the value encoded by the one-hot lies in [a, b] (inclusive).
/// TwoMapTests multiplies a >=a test with a <=b test (one extra ct mult,
/// depth +1); IntervalMask is a single plaintext-mask dot product (depth 1).
CipherVec range_check(HeContext& ctx, const CipherVec& onehot, long a, long b, long n,
                      RangePath path = RangePath::IntervalMask);

}  // namespace ohsim::cmp
