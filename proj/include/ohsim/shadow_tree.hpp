// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <vector>

#include "ohsim/rational.hpp"

namespace ohsim::conv {

/// Per-node plaintext rebalancing constants for the interpolation product
/// tree. Applying constants[v] at every node while the tree is built spreads
/// the Lagrange denominator S[c]^-1 across levels, so intermediate products
/// stay moderate instead of growing factorially.
///
/// Nodes are heap-indexed: root = 1, children of v are 2v and 2v+1, leaves
/// occupy [n, 2n). The root carries no constant (held as 1).
///
/// Construction, for n = 2^levels leaves:
///  1. Every leaf c starts with the difference multiset
///     S_0[c] = {c - i : i in [n], i != c}.
///  2. Bottom-up, each parent takes the intersection of its children's sets;
///     each child keeps its residual (set minus intersection).
///  3. Every node's residual set is swapped with its sibling's, so that the
///     constants a leaf's path-sibling walk picks up multiply to exactly
///     S[c]^-1.
///  4. A node's constant is (prod(own set) / (prod(left set) * prod(right
///     set)))^-1 so nothing is counted twice along a walk; a leaf's constant
///     is (prod(own set))^-1.
/// All arithmetic is exact rational.
class ShadowTree {
public:
    static ShadowTree build(long n);

    long leaf_count() const { return n_; }
    int levels() const { return levels_; }

    /// Constant for heap node v (1 for the root).
    const Rat& constant(std::size_t v) const { return constants_[v]; }
    const std::vector<Rat>& constants() const { return constants_; }

    /// Cumulative product of constants over the subtree rooted at v; equals
    /// the inverse of the product of the node's post-swap residual set.
    Rat subtree_product(std::size_t v) const;

    /// Smallest/largest strictly positive constant in the tree (root
    /// excluded); the values tabulated per tree size.
    Rat min_positive() const;
    Rat max_positive() const;

    /// Phase-1 residual sets (before the sibling swap), exposed for tests.
    const std::vector<std::vector<long>>& phase1_sets() const { return phase1_sets_; }
    /// Post-swap residual sets.
    const std::vector<std::vector<long>>& sets() const { return sets_; }

    nlohmann::json to_json() const;
    static ShadowTree from_json(const nlohmann::json& j);

private:
    long n_ = 0;
    int levels_ = 0;
    std::vector<Rat> constants_;                 // size 2n, index 0 unused
    std::vector<std::vector<long>> phase1_sets_; // size 2n
    std::vector<std::vector<long>> sets_;        // size 2n
};

/// S[c] = prod_{i in [n], i != c} (c - i), exact, 0-based classes.
std::vector<Rat> lagrange_denominators(long n);

}  // namespace ohsim::conv
