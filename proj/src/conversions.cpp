// SPDX-License-Identifier: Apache-2.0
#include "ohsim/conversions.hpp"

#include <stdexcept>

#include "ohsim/comparators.hpp"

namespace ohsim::conv {

namespace {

long next_pow2(long n) {
    long v = 1;
    while (v < n) v <<= 1;
    return v;
}

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

/// Balanced product over a list of ciphertexts: size-1 mults, depth ceil(log2 size).
CipherVec balanced_product(HeContext& ctx, std::vector<CipherVec> items) {
    if (items.empty()) throw std::invalid_argument("balanced_product: empty");
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

PlainVec scalar_plain(HeContext& ctx, const Rat& v) { return ctx.encode_scalar(v); }

}  // namespace

// ---- product tree -------------------------------------------------------------

ProductTree build_product_tree(HeContext& ctx, const CipherVec& x, long n,
                               const ShadowTree* shadow) {
    if (!is_pow2(n)) throw std::invalid_argument("product tree needs a power-of-two class count");
    if (static_cast<std::size_t>(n) > ctx.slots())
        throw std::invalid_argument("product tree larger than slot count");
    ProductTree t;
    t.n = n;
    t.nodes.resize(static_cast<std::size_t>(2 * n));
    // Leaves: x - c for 1-based classes c = 1..n; the public 0-based category
    // value v maps to x = v + 1, folded into one plaintext addition.
    for (long c = 1; c <= n; ++c) {
        CipherVec leaf = ctx.plain_add(scalar_plain(ctx, Rat(1 - c)), x);
        if (shadow) {
            PlainVec k = scalar_plain(ctx, shadow->constant(static_cast<std::size_t>(n + c - 1)));
            leaf = ctx.pt_mul(k, leaf);
        }
        t.nodes[static_cast<std::size_t>(n + c - 1)] = std::move(leaf);
    }
    for (long v = n - 1; v >= 1; --v) {
        CipherVec node = ctx.mul(t.nodes[static_cast<std::size_t>(2 * v)],
                                 t.nodes[static_cast<std::size_t>(2 * v + 1)]);
        if (shadow && v >= 2) {
            PlainVec k = scalar_plain(ctx, shadow->constant(static_cast<std::size_t>(v)));
            node = ctx.pt_mul(k, node);
        }
        t.nodes[static_cast<std::size_t>(v)] = std::move(node);
    }
    return t;
}

// ---- dot products ---------------------------------------------------------------

CipherVec one_hot_to_numeric(HeContext& ctx, const CipherVec& onehot, const PlainVec& classes) {
    CipherVec prod = ctx.pt_mul(classes, onehot);
    return ctx.rotate_and_sum(prod, ctx.slots());
}

CipherVec one_hot_to_numeric(HeContext& ctx, const CipherVec& onehot, const CipherVec& classes) {
    CipherVec prod = ctx.mul(classes, onehot);
    return ctx.rotate_and_sum(prod, ctx.slots());
}

// ---- CRT ------------------------------------------------------------------------

CipherVec duplicate_cyclic(HeContext& ctx, const CipherVec& v, long width, long copies) {
    if (width <= 0 || copies <= 0) throw std::invalid_argument("duplicate_cyclic: bad arguments");
    if (static_cast<std::size_t>(width * copies) > ctx.slots())
        throw std::invalid_argument("duplicate_cyclic: result exceeds slot count");
    if (copies == 1) return v;
    // Binary doubling: doubles[j] holds 2^j copies. Assemble the binary
    // decomposition of `copies` by shifting each doubled block into place.
    CipherVec block = v;
    long block_copies = 1;
    CipherVec acc;
    bool have_acc = false;
    long placed = 0;
    long remaining = copies;
    while (remaining > 0) {
        if (remaining & 1) {
            CipherVec shifted = placed == 0 ? block : ctx.rotate(block, -placed * width);
            acc = have_acc ? ctx.add(acc, shifted) : shifted;
            have_acc = true;
            placed += block_copies;
        }
        remaining >>= 1;
        if (remaining > 0) {
            block = ctx.add(block, ctx.rotate(block, -block_copies * width));
            block_copies *= 2;
        }
    }
    return acc;
}

CipherVec crt_to_one_hot(HeContext& ctx, const CrtCipherRep& rep) {
    rep.basis.validate();
    if (rep.submaps.size() != rep.basis.moduli.size())
        throw std::invalid_argument("crt_to_one_hot: submap count mismatch");
    long m = static_cast<long>(rep.basis.m);
    std::vector<CipherVec> dups;
    dups.reserve(rep.submaps.size());
    for (std::size_t i = 0; i < rep.submaps.size(); ++i) {
        long ni = rep.basis.moduli[i];
        dups.push_back(duplicate_cyclic(ctx, rep.submaps[i], ni, m / ni));
    }
    return balanced_product(ctx, std::move(dups));
}

// ---- hierarchical CRT ------------------------------------------------------------

namespace {
CipherVec hier_combine(HeContext& ctx, const repr::HierNode& node,
                       const std::vector<CipherVec>& leaf_maps, std::size_t& cursor) {
    if (node.is_leaf()) {
        if (cursor >= leaf_maps.size()) throw std::invalid_argument("hier map count mismatch");
        return leaf_maps[cursor++];
    }
    CipherVec l = hier_combine(ctx, *node.left, leaf_maps, cursor);
    CipherVec r = hier_combine(ctx, *node.right, leaf_maps, cursor);
    long c1 = node.left->modulus, c2 = node.right->modulus;
    // CRT pair combine: tile each child map across c1*c2 slots and multiply.
    // Slots >= node.modulus of the product are exactly zero (the pair has a
    // single coincidence below c1*c2 and it equals the node residue), so the
    // result can be consumed as a node.modulus-wide map directly.
    CipherVec ld = duplicate_cyclic(ctx, l, c1, c2);
    CipherVec rd = duplicate_cyclic(ctx, r, c2, c1);
    return ctx.mul(ld, rd);
}
}  // namespace

CipherVec hier_crt_to_one_hot(HeContext& ctx, const HierCipherRep& rep) {
    rep.basis.validate();
    std::size_t cursor = 0;
    CipherVec out = hier_combine(ctx, *rep.basis.root, rep.leaf_maps, cursor);
    if (cursor != rep.leaf_maps.size())
        throw std::invalid_argument("hier_crt_to_one_hot: unused leaf maps");
    return out;
}

// ---- numeric -> one-hot ------------------------------------------------------------

CipherVec numeric_to_one_hot_naive(HeContext& ctx, const CipherVec& x_replicated, long n,
                                   const cmp::EqConfig& cfg) {
    if (static_cast<std::size_t>(n) > ctx.slots())
        throw std::invalid_argument("numeric_to_one_hot_naive: n exceeds slot count");
    std::vector<Rat> classes(ctx.slots(), Rat(-1));  // sentinel: never equal to an input
    for (long i = 0; i < n; ++i) classes[static_cast<std::size_t>(i)] = Rat(i);
    return cmp::eq_approx(ctx, x_replicated, ctx.encode(classes), cfg);
}

OneHotRows numeric_to_one_hot_naive_rows(HeContext& ctx, const CipherVec& x_samples, long n,
                                         const cmp::EqConfig& cfg) {
    OneHotRows out;
    out.rows.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        out.rows.push_back(cmp::eq_approx(ctx, x_samples, ctx.encode_scalar(Rat(i)), cfg));
    return out;
}

namespace {

std::vector<std::size_t> path_siblings(long n, long c) {
    std::vector<std::size_t> sibs;
    for (std::size_t v = static_cast<std::size_t>(n + c); v > 1; v >>= 1) sibs.push_back(v ^ 1);
    return sibs;  // leaf-to-root order, heights 0 .. log2(n)-1
}

}  // namespace

OneHotRows numeric_to_one_hot_alg1(HeContext& ctx, const CipherVec& x, long n,
                                   const LagrangeOptions& opt) {
    ProductTree tree = build_product_tree(ctx, x, n, opt.shadow);
    std::vector<Rat> s_inv;
    if (!opt.shadow) {
        s_inv = lagrange_denominators(n);
        for (auto& v : s_inv) v = 1 / v;
    }
    OneHotRows out;
    out.rows.reserve(static_cast<std::size_t>(n));
    for (long c = 0; c < n; ++c) {
        std::vector<std::size_t> sibs = path_siblings(n, c);
        if (opt.reversed_path) std::reverse(sibs.begin(), sibs.end());
        CipherVec acc;
        if (opt.shadow) {
            acc = tree.nodes[sibs.front()];
            for (std::size_t j = 1; j < sibs.size(); ++j) acc = ctx.mul(acc, tree.nodes[sibs[j]]);
        } else {
            // Seed the walk with the Lagrange constant so the fold stays one
            // level ahead of the tree: depth log2(n) in leaf-to-root order.
            PlainVec seed = scalar_plain(ctx, s_inv[static_cast<std::size_t>(c)]);
            acc = ctx.pt_mul(seed, tree.nodes[sibs.front()]);
            for (std::size_t j = 1; j < sibs.size(); ++j) acc = ctx.mul(acc, tree.nodes[sibs[j]]);
        }
        out.rows.push_back(std::move(acc));
    }
    return out;
}

OneHotRows numeric_to_one_hot_alg2(HeContext& ctx, const CipherVec& x, long n,
                                   const LagrangeOptions& opt) {
    ProductTree tree = build_product_tree(ctx, x, n, opt.shadow);
    std::vector<Rat> s_inv;
    if (!opt.shadow) {
        s_inv = lagrange_denominators(n);
        for (auto& v : s_inv) v = 1 / v;
    }
    // Complementary tree: root = 1, node = parent * sibling-in-T. The two
    // children of the root are plain copies of each other's T value; the
    // multiplication by the root's 1 is elided.
    std::vector<CipherVec> t2(static_cast<std::size_t>(2 * n));
    t2[2] = tree.nodes[3];
    t2[3] = tree.nodes[2];
    for (std::size_t v = 4; v < static_cast<std::size_t>(2 * n); ++v)
        t2[v] = ctx.mul(t2[v >> 1], tree.nodes[v ^ 1]);
    OneHotRows out;
    out.rows.reserve(static_cast<std::size_t>(n));
    for (long c = 0; c < n; ++c) {
        CipherVec leaf = t2[static_cast<std::size_t>(n + c)];
        if (!opt.shadow)
            leaf = ctx.pt_mul(scalar_plain(ctx, s_inv[static_cast<std::size_t>(c)]), leaf);
        out.rows.push_back(std::move(leaf));
    }
    return out;
}

OneHotRows numeric_to_one_hot_padded(HeContext& ctx, const CipherVec& x, long n, bool use_alg2,
                                     const LagrangeOptions& opt) {
    long np = next_pow2(n);
    OneHotRows full = use_alg2 ? numeric_to_one_hot_alg2(ctx, x, np, opt)
                               : numeric_to_one_hot_alg1(ctx, x, np, opt);
    full.rows.resize(static_cast<std::size_t>(n));
    return full;
}

// ---- binary -> one-hot --------------------------------------------------------------

CipherVec broadcast_slot0(HeContext& ctx, const CipherVec& v, long count) {
    CipherVec acc = v;
    for (long have = 1; have < count; have <<= 1) acc = ctx.add(acc, ctx.rotate(acc, -have));
    return acc;
}

CipherVec binary_to_one_hot(HeContext& ctx, const std::vector<CipherVec>& bits, long n) {
    if (!is_pow2(n)) throw std::invalid_argument("binary_to_one_hot: n must be a power of two");
    long width = repr::ceil_log2(n);
    if (static_cast<long>(bits.size()) != std::max(width, 1L))
        throw std::invalid_argument("binary_to_one_hot: wrong bit count");
    std::vector<CipherVec> selectors;
    selectors.reserve(bits.size());
    for (long i = 0; i < static_cast<long>(bits.size()); ++i) {
        // selector = (1 - w_i) + dup(a_i) * (2 w_i - 1), masks zero beyond n
        // so padding slots of the product vanish.
        std::vector<Rat> two_w_minus_1(ctx.slots(), Rat(0));
        std::vector<Rat> one_minus_w(ctx.slots(), Rat(0));
        for (long xslot = 0; xslot < n; ++xslot) {
            int w = static_cast<int>((xslot >> i) & 1);
            two_w_minus_1[static_cast<std::size_t>(xslot)] = Rat(2 * w - 1);
            one_minus_w[static_cast<std::size_t>(xslot)] = Rat(1 - w);
        }
        CipherVec sel = ctx.pt_mul(ctx.encode(two_w_minus_1), bits[static_cast<std::size_t>(i)]);
        sel = ctx.plain_add(ctx.encode(one_minus_w), sel);
        selectors.push_back(std::move(sel));
    }
    if (selectors.size() == 1) return selectors.front();
    return balanced_product(ctx, std::move(selectors));
}

// ---- one-hot -> binary / CRT ----------------------------------------------------------

std::vector<CipherVec> one_hot_to_binary(HeContext& ctx, const CipherVec& onehot, long n) {
    long width = std::max(repr::ceil_log2(n), 1L);
    std::vector<CipherVec> bits;
    bits.reserve(static_cast<std::size_t>(width));
    for (long k = 0; k < width; ++k) {
        std::vector<Rat> mask(ctx.slots(), Rat(0));
        for (long i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = Rat((i >> k) & 1);
        CipherVec bit = ctx.pt_mul(ctx.encode(mask), onehot);
        bits.push_back(ctx.rotate_and_sum(bit, ctx.slots()));
    }
    return bits;
}

std::vector<CipherVec> one_hot_to_crt(HeContext& ctx, const CipherVec& onehot,
                                      const repr::CrtBasis& basis) {
    if (static_cast<std::size_t>(basis.m) > ctx.slots())
        throw std::invalid_argument("one_hot_to_crt: basis exceeds slot count");
    std::vector<CipherVec> residues;
    residues.reserve(basis.moduli.size());
    for (long p : basis.moduli) {
        std::vector<Rat> mask(ctx.slots(), Rat(0));
        for (long i = 0; i < basis.m; ++i) mask[static_cast<std::size_t>(i)] = Rat(i % p);
        CipherVec r = ctx.pt_mul(ctx.encode(mask), onehot);
        residues.push_back(ctx.rotate_and_sum(r, ctx.slots()));
    }
    return residues;
}

// ---- one-hot -> greater map -------------------------------------------------------------

CipherVec greater_map_from_one_hot(HeContext& ctx, const CipherVec& onehot, long n,
                                   PrefixStyle style, bool strict) {
    long window = next_pow2(n);
    if (static_cast<long>(ctx.slots()) < 2 * window)
        throw std::invalid_argument("greater_map_from_one_hot: needs s >= 2 * next_pow2(n) guard slots");
    CipherVec g = onehot;
    if (style == PrefixStyle::SequentialAdds) {
        CipherVec shifted = onehot;
        for (long t = 1; t < n; ++t) {
            shifted = ctx.rotate(shifted, -1);
            g = ctx.add(g, shifted);
        }
    } else {
        for (long step = 1; step < window; step <<= 1) g = ctx.add(g, ctx.rotate(g, -step));
    }
    if (strict) g = ctx.rotate(g, -1);
    return g;
}

CipherVec rows_to_slots(HeContext& ctx, const OneHotRows& rows) {
    if (rows.rows.empty()) throw std::invalid_argument("rows_to_slots: empty");
    CipherVec acc;
    bool first = true;
    for (std::size_t c = 0; c < rows.rows.size(); ++c) {
        std::vector<Rat> mask(ctx.slots(), Rat(0));
        mask[c] = 1;
        CipherVec masked = ctx.pt_mul(ctx.encode(mask), rows.rows[c]);
        acc = first ? masked : ctx.add(acc, masked);
        first = false;
    }
    return acc;
}

}  // namespace ohsim::conv
