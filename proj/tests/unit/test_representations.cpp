// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numeric>

#include "ohsim/representations.hpp"

using namespace ohsim;
using namespace ohsim::repr;

namespace {

// Brute-force CRT recombination: scan [0, n) for the residue match.
long crt_oracle(const std::vector<long>& residues, const std::vector<long>& moduli, long n) {
    for (long v = 0; v < n; ++v) {
        bool ok = true;
        for (std::size_t i = 0; i < moduli.size(); ++i)
            if (v % moduli[i] != residues[i]) {
                ok = false;
                break;
            }
        if (ok) return v;
    }
    return -1;
}

// Independent residue walk over the modulus tree.
void hier_oracle(const HierNode& node, long value, std::vector<long>& leaves) {
    long r = value % node.modulus;
    if (node.is_leaf()) {
        leaves.push_back(r);
        return;
    }
    hier_oracle(*node.left, r, leaves);
    hier_oracle(*node.right, r, leaves);
}

}  // namespace

TEST_CASE("one-hot / binary / greater-map encoders on the worked examples") {
    CHECK(one_hot_of(0, 4).bits == std::vector<int>{1, 0, 0, 0});
    CHECK(binary_of(3, 8).bits == std::vector<int>{1, 1, 0});
    CHECK(greater_map_of(2, 5).bits == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(greater_map_of(4, 5).bits == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(greater_map_of(2, 5, true).bits == std::vector<int>{1, 1, 0, 0, 0});
    CHECK_THROWS_AS(one_hot_of(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(greater_map_of(5, 5), std::invalid_argument);
}

TEST_CASE("crt encoding of 17 over (2,3,5)") {
    auto basis = CrtBasis::make({2, 3, 5}, 30);
    auto rep = encode_crt(17, basis);
    CHECK(rep.submaps[0].bits == std::vector<int>{0, 1});
    CHECK(rep.submaps[1].bits == std::vector<int>{0, 0, 1});
    CHECK(rep.submaps[2].bits == std::vector<int>{0, 0, 1, 0, 0});
    CHECK(basis.slot_cost() == 10);
    CHECK(decode_crt(rep) == 17);
}

TEST_CASE("crt/binary/one-hot round trips, exhaustive to n = 64") {
    for (long n : {2L, 3L, 12L, 30L, 64L}) {
        for (long a = 0; a < n; ++a) {
            CHECK(decode_one_hot(one_hot_of(a, n)) == a);
            CHECK(decode_binary(binary_of(a, n)) == a);
        }
    }
    auto basis = find_crt_basis(30).basis;
    for (long a = 0; a < 30; ++a) {
        auto rep = encode_crt(a, basis);
        std::vector<long> residues;
        for (const auto& m : rep.submaps) residues.push_back(m.index());
        CHECK(decode_crt(rep) == a);
        CHECK(crt_oracle(residues, basis.moduli, 30) == a);
    }
}

TEST_CASE("moduli search reproduces the published bases") {
    auto r10000 = find_crt_basis(10000);
    CHECK(r10000.basis.moduli == std::vector<long>{2, 5, 7, 11, 13});
    CHECK(r10000.basis.m == 10010);
    CHECK(r10000.basis.slot_cost() == 38);
    CHECK_FALSE(r10000.warning);

    auto r100 = find_crt_basis(100);
    CHECK(r100.basis.moduli == std::vector<long>{3, 5, 7});
    CHECK(r100.basis.m == 105);
    CHECK(r100.basis.slot_cost() == 15);

    auto r30 = find_crt_basis(30);
    CHECK(r30.basis.moduli == std::vector<long>{2, 3, 5});
    CHECK(r30.basis.slot_cost() == 10);
}

TEST_CASE("moduli search is deterministic and the scan strategy works") {
    auto a = find_crt_basis(10000);
    auto b = find_crt_basis(10000);
    CHECK(a.basis.moduli == b.basis.moduli);

    auto scan = find_crt_basis(30, BasisStrategy::ScanRange, 0);
    CHECK(scan.basis.moduli == std::vector<long>{2, 3, 5});
    CHECK_FALSE(scan.warning);

    // 32 = 2^5 has a single prime-power factor; with no scan room the search
    // falls back to the trivial basis and flags it.
    auto stuck = find_crt_basis(32, BasisStrategy::ScanRange, 0);
    CHECK(stuck.warning);
    CHECK(stuck.basis.moduli == std::vector<long>{32});

    auto widened = find_crt_basis(32, BasisStrategy::ScanRange, 4);
    CHECK_FALSE(widened.warning);  // 35 = 5*7 or 36 = 4*9
    CHECK(widened.basis.slot_cost() < 32);
}

TEST_CASE("hierarchical basis: published 10,000 example") {
    auto b = build_hier_basis(10000, 3);
    CHECK(b.per_level_slot_cost() == std::vector<long>{201, 44, 36});
    CHECK(b.leaf_moduli() == std::vector<long>{4, 5, 4, 5, 4, 5, 4, 5});

    auto b1 = build_hier_basis(10000, 1);
    CHECK(b1.root->left->modulus == 100);
    CHECK(b1.root->right->modulus == 101);

    auto b4 = build_hier_basis(4, 1);
    CHECK(b4.per_level_slot_cost() == std::vector<long>{5});  // (2, 3)

    CHECK_THROWS_AS(build_hier_basis(4, 2), std::invalid_argument);  // would split 2
}

TEST_CASE("hierarchical encoding of 5678 matches the worked residues and the oracle") {
    auto basis = build_hier_basis(10000, 3);
    auto rep = encode_hier(5678, basis);

    CHECK(rep.root->left->residue == 78);          // a mod 100
    CHECK(rep.root->right->residue == 22);         // a mod 101
    CHECK(rep.root->right->right->residue == 10);  // 22 mod 12

    std::vector<long> expected_leaves;
    hier_oracle(*basis.root, 5678, expected_leaves);
    CHECK(rep.leaf_residues() == expected_leaves);
    // The independently-recomputed second-level residues.
    CHECK(rep.root->left->left->residue == 8);   // 78 mod 10
    CHECK(rep.root->left->right->residue == 1);  // 78 mod 11
    CHECK(rep.root->right->left->residue == 0);  // 22 mod 11
    CHECK(expected_leaves == std::vector<long>{0, 3, 1, 1, 0, 0, 2, 0});

    CHECK(decode_hier(rep) == 5678);
    CHECK_THROWS_AS(encode_hier(10000, basis), std::invalid_argument);
}

TEST_CASE("hierarchical round trip at sampled values") {
    auto basis = build_hier_basis(10000, 3);
    for (long a : {0L, 1L, 99L, 100L, 5678L, 9999L}) {
        auto rep = encode_hier(a, basis);
        CHECK(decode_hier(rep) == a);
        std::vector<long> oracle_leaves;
        hier_oracle(*basis.root, a, oracle_leaves);
        CHECK(rep.leaf_residues() == oracle_leaves);
    }
    auto small = build_hier_basis(64, 2);
    for (long a = 0; a < 64; ++a) CHECK(decode_hier(encode_hier(a, small)) == a);
}

TEST_CASE("slot cost ordering for composite n") {
    long n = 10010;
    auto crt = find_crt_basis(n).basis;
    auto hier = build_hier_basis(n, 3);
    long numeric = slot_cost(RepKind::Numeric, n);
    long binary = slot_cost(RepKind::Binary, n);
    long hier_cost = slot_cost(RepKind::HierCrt, n, nullptr, &hier);
    long crt_cost = slot_cost(RepKind::Crt, n, &crt, nullptr);
    long onehot = slot_cost(RepKind::OneHot, n);
    CHECK(numeric == 1);
    CHECK(binary == 14);
    CHECK(numeric < binary);
    CHECK(binary < hier_cost);
    CHECK(hier_cost <= crt_cost);
    CHECK(crt_cost < onehot);
}

TEST_CASE("class map with affine index function") {
    // Quantized [1, 2] range in steps of 0.2; phi(a) = 5a - 5 carries the
    // category values onto {0..5}.
    std::vector<Rat> cats = {Rat(1), Rat(6, 5), Rat(7, 5), Rat(8, 5), Rat(9, 5), Rat(2)};
    auto m = ClassMap::numeric(cats, std::make_pair(Rat(5), Rat(-5)));
    CHECK(m.size() == 6);
    CHECK(m.index_of(Rat(7, 5)) == 2);
    CHECK(m.index_of(Rat(2)) == 5);
    CHECK_THROWS_AS(m.index_of(Rat(3)), std::invalid_argument);

    // phi(a) = 5a - 4 maps onto {1..6}, not [6]; the bijection check rejects it.
    CHECK_THROWS_AS(ClassMap::numeric(cats, std::make_pair(Rat(5), Rat(-4))),
                    std::invalid_argument);

    auto lab = ClassMap::categorical({"dog", "cat", "bird"});
    CHECK(lab.index_of("cat") == 1);
    CHECK_THROWS_AS(lab.index_of("fish"), std::invalid_argument);
}

TEST_CASE("representation json shapes") {
    auto oh = one_hot_of(2, 4);
    CHECK(to_json(oh).dump() == "[0,0,1,0]");
    auto basis = find_crt_basis(30).basis;
    auto j = to_json(encode_crt(17, basis));
    CHECK(j["basis"]["moduli"] == std::vector<long>{2, 3, 5});
    CHECK(j["submaps"][0].dump() == "[0,1]");
    auto hb = build_hier_basis(100, 2);
    auto hj = to_json(encode_hier(42, hb));
    CHECK(hj["tree"]["modulus"] == 100);
    CHECK(hj["tree"]["left"]["modulus"] == 10);
}

TEST_CASE("validators reject malformed values") {
    OneHotMap two_ones{{1, 0, 1}};
    CHECK_THROWS_AS(two_ones.validate(), std::invalid_argument);
    GreaterMap bad{{0, 1, 0, 1}, false};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(CrtBasis::make({2, 4}, 8), std::invalid_argument);  // gcd 2
    CHECK_THROWS_AS(CrtBasis::make({2, 3}, 7), std::invalid_argument);  // m < n
}
