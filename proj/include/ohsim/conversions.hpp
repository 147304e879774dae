// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ohsim/comparators_fwd.hpp"
#include "ohsim/representations.hpp"
#include "ohsim/shadow_tree.hpp"
#include "ohsim/simd.hpp"

namespace ohsim::conv {

/// Balanced product tree over the shifted inputs x - c, heap-indexed like
/// ShadowTree (root 1, leaves [n, 2n)). Leaf c holds x - (c+1): classes are
/// 1-based internally so the sign structure of the precomputed constants
/// matches; public entry points take 0-based category values and fold the
/// shift into the per-leaf plaintext addition.
struct ProductTree {
    long n = 0;
    std::vector<CipherVec> nodes;  // size 2n, index 0 unused

    const CipherVec& leaf(long c) const { return nodes[static_cast<std::size_t>(n + c)]; }
    const CipherVec& root() const { return nodes[1]; }
};

/// Builds the tree; when shadow is non-null every node (leaves included) is
/// additionally scaled by its rebalancing constant via one pt-ct mult.
ProductTree build_product_tree(HeContext& ctx, const CipherVec& x, long n,
                               const ShadowTree* shadow = nullptr);

/// Layout of a server-side one-hot map.
///  - Slots: one CipherVec, map across the first n slots (one sample).
///  - Rows: n CipherVecs, row c holding o[c] for every sample slot.
struct OneHotRows {
    std::vector<CipherVec> rows;
};

// ---- one-hot -> numeric (dot product) ---------------------------------------

/// <classes, o> with plaintext classes: one pt-ct vector mult + rotate-and-sum,
/// result replicated in every slot.
CipherVec one_hot_to_numeric(HeContext& ctx, const CipherVec& onehot, const PlainVec& classes);
/// Encrypted classes variant: one ct-ct vector mult.
CipherVec one_hot_to_numeric(HeContext& ctx, const CipherVec& onehot, const CipherVec& classes);

// ---- CRT -> one-hot -----------------------------------------------------------

struct CrtCipherRep {
    repr::CrtBasis basis;
    std::vector<CipherVec> submaps;  // submap i occupies the first n_i slots
};

/// Duplicates each submap cyclically across m slots (rotations only), then
/// multiplies the k duplicated maps with a balanced tree: k-1 vector mults,
/// depth ceil(log2 k).
CipherVec crt_to_one_hot(HeContext& ctx, const CrtCipherRep& rep);

/// Cyclic duplication helper: v holds `width` meaningful slots (zero
/// elsewhere); the result repeats them `copies` times. Rotations and
/// additions only.
CipherVec duplicate_cyclic(HeContext& ctx, const CipherVec& v, long width, long copies);

// ---- hierarchical CRT -> one-hot ----------------------------------------------

struct HierCipherRep {
    repr::HierBasis basis;
    std::vector<CipherVec> leaf_maps;  // left-to-right, submap per leaf modulus
};

/// Applies the CRT pair combination bottom-up through the modulus tree and
/// returns the root map over n slots.
CipherVec hier_crt_to_one_hot(HeContext& ctx, const HierCipherRep& rep);

// ---- numeric -> one-hot ---------------------------------------------------------

/// o[i] = Eq(i, x) across slots: x arrives replicated, classes 0..n-1 sit in
/// the plaintext; one Eq circuit evaluated over the whole vector.
CipherVec numeric_to_one_hot_naive(HeContext& ctx, const CipherVec& x_replicated, long n,
                                   const cmp::EqConfig& cfg);

/// Row variant used under sample-major packing: row i = Eq(class_i, x).
OneHotRows numeric_to_one_hot_naive_rows(HeContext& ctx, const CipherVec& x_samples, long n,
                                         const cmp::EqConfig& cfg);

struct LagrangeOptions {
    const ShadowTree* shadow = nullptr;
    /// Evaluate each leaf's sibling walk root-to-leaf instead of
    /// leaf-to-root. Produces the same values at roughly double the depth;
    /// exists to measure the cost of the wrong fold order.
    bool reversed_path = false;
};

/// "Shallow but big": full product tree, then per leaf one walk multiplying
/// the path-sibling values, seeded with the Lagrange constant. n must be a
/// power of two; x holds 0-based category values in [0, n).
OneHotRows numeric_to_one_hot_alg1(HeContext& ctx, const CipherVec& x, long n,
                                   const LagrangeOptions& opt = {});

/// "Small but less shallow": same product tree, then a complementary tree
/// built top-down whose leaves are the one-hot values; at most 2n vector
/// mults after the shared tree build.
OneHotRows numeric_to_one_hot_alg2(HeContext& ctx, const CipherVec& x, long n,
                                   const LagrangeOptions& opt = {});

/// Pads the class set with dummy categories up to the next power of two,
/// runs alg1 or alg2, and discards the extra rows.
OneHotRows numeric_to_one_hot_padded(HeContext& ctx, const CipherVec& x, long n, bool use_alg2,
                                     const LagrangeOptions& opt = {});

// ---- binary -> one-hot -----------------------------------------------------------

/// bits[i] must hold bit i replicated across the first n slots. Builds the
/// log2(n) duplicated selectors via 1 - w_i + dup(a_i) (2 w_i - 1) (one pt-ct
/// mult each), then multiplies them with a balanced tree.
CipherVec binary_to_one_hot(HeContext& ctx, const std::vector<CipherVec>& bits, long n);

/// Broadcast of slot 0 across the first `count` slots; rotations and adds.
CipherVec broadcast_slot0(HeContext& ctx, const CipherVec& v, long count);

// ---- one-hot -> binary / CRT (plaintext-mask dot products) -----------------------

/// a[k] = <m_k, o> with bit-extraction masks m_k[i] = bit k of i. Each bit
/// costs one pt-ct mult plus a rotate-and-sum; results arrive replicated.
std::vector<CipherVec> one_hot_to_binary(HeContext& ctx, const CipherVec& onehot, long n);

/// Residue masks m_k[i] = i mod p_k; yields the numeric CRT representation.
std::vector<CipherVec> one_hot_to_crt(HeContext& ctx, const CipherVec& onehot,
                                      const repr::CrtBasis& basis);

// ---- one-hot -> greater map --------------------------------------------------------

enum class PrefixStyle { SequentialAdds, LogRotations };

/// Inclusive prefix sum g[j] = sum_{i<=j} o[i] (so g[a] = 1); the strict
/// Definition-2 orientation is the same map shifted by one extra rotation.
/// Requires s >= 2 * next_pow2(n) of zero guard slots; no multiplications.
CipherVec greater_map_from_one_hot(HeContext& ctx, const CipherVec& onehot, long n,
                                   PrefixStyle style = PrefixStyle::LogRotations,
                                   bool strict = false);

/// Collapses a row-layout map into slot layout: n pt-ct mask mults + adds.
CipherVec rows_to_slots(HeContext& ctx, const OneHotRows& rows);

}  // namespace ohsim::conv
