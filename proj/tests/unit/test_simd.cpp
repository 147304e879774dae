// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "ohsim/config.hpp"
#include "ohsim/simd.hpp"

using namespace ohsim;

namespace {

HeContext exact_ctx(std::size_t slots = 8) { return HeContext(slots, ArithmeticProfile::exact()); }

CipherVec enc(HeContext& ctx, std::vector<Rat> vals) { return ctx.encrypt(ctx.encode(vals)); }

std::vector<Rat> reals(HeContext& ctx, const CipherVec& v) {
    std::vector<Rat> out;
    for (const auto& s : ctx.decrypt(v)) out.push_back(s.re);
    return out;
}

}  // namespace

TEST_CASE("add: disjoint supports and zero identity") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {1, 0, 0, 0});
    auto b = enc(ctx, {0, 1, 0, 0});
    CHECK(reals(ctx, ctx.add(a, b)) == std::vector<Rat>{1, 1, 0, 0});

    auto z = ctx.encrypt_zero();
    CHECK(reals(ctx, ctx.add(a, z)) == reals(ctx, a));
    CHECK(ctx.ledger().adds == 2);
}

TEST_CASE("add/mul depth bookkeeping") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {2, 3, 0, 0});
    auto b = enc(ctx, {4, 5, 1, 1});
    auto p = ctx.mul(a, b);
    CHECK(reals(ctx, p)[0] == 2 * 4);
    CHECK(reals(ctx, p)[1] == 15);
    CHECK(p.depth() == 1);
    CHECK(ctx.add(p, b).depth() == 1);  // add keeps max depth
    CHECK(ctx.mul(p, b).depth() == 2);
    CHECK(ctx.ledger().ct_mults == 2);
    CHECK(ctx.ledger().max_depth == 2);

    auto ones = enc(ctx, {1, 1, 1, 1});
    CHECK(reals(ctx, ctx.mul(ones, a)) == reals(ctx, a));
}

TEST_CASE("pt_mul masks and the affine category map") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {3, 5, 7, 9});
    auto mask = ctx.encode({1, 0, 1, 0});
    auto masked = ctx.pt_mul(mask, a);
    CHECK(reals(ctx, masked) == std::vector<Rat>{3, 0, 7, 0});
    CHECK(masked.depth() == 1);
    CHECK(masked.pt_free_depth() == 0);
    CHECK(ctx.ledger().pt_mults == 1);

    // phi(a) = 5a - 4 on the quantized inputs [1, 1.2, 1.4, 1.6].
    auto vals = enc(ctx, {Rat(1), Rat(6, 5), Rat(7, 5), Rat(8, 5)});
    auto scaled = ctx.pt_mul(ctx.encode_scalar(5), vals);
    auto shifted = ctx.plain_add(ctx.encode_scalar(-4), scaled);
    CHECK(reals(ctx, shifted) == std::vector<Rat>{1, 2, 3, 4});
}

TEST_CASE("rotate semantics") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {1, 2, 3, 4});
    CHECK(reals(ctx, ctx.rotate(a, 1)) == std::vector<Rat>{2, 3, 4, 1});
    CHECK(reals(ctx, ctx.rotate(a, 0)) == std::vector<Rat>{1, 2, 3, 4});
    CHECK(reals(ctx, ctx.rotate(ctx.rotate(a, 3), 4 - 3)) == reals(ctx, a));
    CHECK(ctx.rotate(a, 1).depth() == 0);
}

TEST_CASE("conjugate and complex norms") {
    auto ctx = exact_ctx(8);
    std::vector<CSlot> vals = {CSlot(1, 1), CSlot(0, -1), CSlot(-1, 1), CSlot(0, 0)};
    auto v = ctx.encrypt(ctx.encode_complex(vals));
    auto c = ctx.conjugate(v);
    CHECK(ctx.decrypt(c)[0] == CSlot(1, -1));
    CHECK(c.depth() == 0);
    CHECK(ctx.ledger().conjugations == 1);

    // d * conj(d) for d in {0, ±1, ±i, ±1±i} is the squared norm in {0,1,2}.
    std::vector<CSlot> ds = {CSlot(0, 0), CSlot(1, 0),  CSlot(-1, 0), CSlot(0, 1),
                             CSlot(0, -1), CSlot(1, 1), CSlot(1, -1), CSlot(-1, -1)};
    auto d = ctx.encrypt(ctx.encode_complex(ds));
    auto norm = ctx.mul(d, ctx.conjugate(d));
    auto slots = ctx.decrypt(norm);
    std::vector<Rat> expect = {0, 1, 1, 1, 1, 2, 2, 2};
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(slots[i].im == 0);
        CHECK(slots[i].re == expect[i]);
    }
}

TEST_CASE("rotate_and_sum block sums and op counts") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {1, 2, 3, 4});
    CHECK(reals(ctx, ctx.rotate_and_sum(a, 4)) == std::vector<Rat>{10, 10, 10, 10});
    CHECK(ctx.ledger().rotations == 2);  // log2(4)
    CHECK(ctx.ledger().adds == 2);

    auto before = ctx.ledger();
    CHECK(reals(ctx, ctx.rotate_and_sum(a, 1)) == reals(ctx, a));
    CHECK(ctx.ledger().rotations == before.rotations);
    CHECK_THROWS_AS((void)ctx.rotate_and_sum(a, 3), std::invalid_argument);
}

TEST_CASE("depth law on random op DAGs matches an independent walk") {
    auto ctx = exact_ctx(8);
    std::mt19937_64 rng(7);
    struct Node {
        CipherVec v;
        int mult_chain;  // oracle: longest multiplication chain below
    };
    std::vector<Node> pool;
    for (int i = 0; i < 4; ++i) {
        std::vector<Rat> vals(8, Rat(1, 2));
        pool.push_back({ctx.encrypt(ctx.encode(vals)), 0});
    }
    std::uniform_int_distribution<int> pick(0, 3);
    for (int step = 0; step < 200; ++step) {
        const Node& a = pool[static_cast<std::size_t>(pick(rng) % static_cast<int>(pool.size()))];
        const Node& b = pool[static_cast<std::size_t>(pick(rng) % static_cast<int>(pool.size()))];
        int op = pick(rng);
        Node next;
        switch (op) {
            case 0:
                next = {ctx.add(a.v, b.v), std::max(a.mult_chain, b.mult_chain)};
                break;
            case 1:
                next = {ctx.mul(a.v, b.v), std::max(a.mult_chain, b.mult_chain) + 1};
                break;
            case 2:
                next = {ctx.pt_mul(ctx.encode_scalar(Rat(1, 3)), a.v), a.mult_chain + 1};
                break;
            default:
                next = {ctx.rotate(a.v, 1), a.mult_chain};
                break;
        }
        REQUIRE(next.v.depth() == static_cast<std::uint32_t>(next.mult_chain));
        pool.push_back(std::move(next));
        if (pool.size() > 24) pool.erase(pool.begin());
    }
}

TEST_CASE("fixed-point rounding stays within one ulp of exact per op") {
    HeContext fx(4, ArithmeticProfile::fixed_point(42, 18));
    HeContext ex = exact_ctx(4);
    std::vector<Rat> va = {Rat(1, 3), Rat(2, 7), Rat(5, 11), Rat(9, 13)};
    std::vector<Rat> vb = {Rat(1, 9), Rat(3, 5), Rat(7, 17), Rat(2, 3)};
    auto fa = fx.encrypt(fx.encode(va)), fb = fx.encrypt(fx.encode(vb));
    auto ea = ex.encrypt(ex.encode(va)), eb = ex.encrypt(ex.encode(vb));
    auto fsum = fx.add(fa, fb);
    auto esum = ex.add(ea, eb);
    Rat ulp = rat_pow2(-42);
    for (std::size_t i = 0; i < 4; ++i) {
        Rat diff = rat_abs(fx.decrypt(fsum)[i].re - ex.decrypt(esum)[i].re);
        CHECK(diff <= 3 * ulp);  // two input encodings + one op rounding
    }
}

TEST_CASE("fixed-point overflow is bound-certified, no silent wraparound") {
    HeContext fx(4, ArithmeticProfile::fixed_point(42, 16));
    auto a = fx.encrypt(fx.encode({300, 0, 0, 0}));
    auto b = fx.encrypt(fx.encode({300, 0, 0, 0}));
    CHECK_THROWS_AS((void)fx.mul(a, b), OverflowError);  // 90000 > 2^16

    auto c = fx.encrypt(fx.encode({200, 0, 0, 0}));
    CHECK_NOTHROW((void)fx.mul(a, c));  // 60000 <= 65536
}

TEST_CASE("fixed-point error grows monotonically as frac_bits shrinks") {
    std::vector<int> fracs = {8, 14, 20, 28, 42};
    std::vector<double> errs;
    HeContext ex = exact_ctx(4);
    std::vector<Rat> vals = {Rat(1, 3), Rat(2, 3), Rat(1, 7), Rat(3, 7)};
    auto run = [&](HeContext& ctx) {
        auto v = ctx.encrypt(ctx.encode(vals));
        auto third = ctx.encode_scalar(Rat(1, 3));
        for (int i = 0; i < 3; ++i) {
            v = ctx.pt_mul(third, v);
            v = ctx.add(v, v);
            v = ctx.mul(v, v);
        }
        return ctx.decrypt(v);
    };
    auto exact = run(ex);
    for (int f : fracs) {
        HeContext fx(4, ArithmeticProfile::fixed_point(f, 18));
        auto got = run(fx);
        double worst = 0;
        for (std::size_t i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(rat_to_double(got[i].re - exact[i].re)));
        errs.push_back(worst);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i - 1] >= errs[i]);
}

TEST_CASE("noisy profile: zero sigma is exact, runs are seed-deterministic") {
    std::vector<Rat> vals = {1, 2, 3, 4};
    HeContext quiet(4, ArithmeticProfile::noisy(0.0));
    auto q = quiet.mul(quiet.encrypt(quiet.encode(vals)), quiet.encrypt(quiet.encode(vals)));
    CHECK(quiet.decrypt(q)[1].re == 4);

    auto run = [&](std::uint64_t seed) {
        HeContext ctx(4, ArithmeticProfile::noisy(1e-3), std::nullopt, false, seed);
        auto v = ctx.mul(ctx.encrypt(ctx.encode(vals)), ctx.encrypt(ctx.encode(vals)));
        return ctx.decrypt(v);
    };
    auto r1 = run(11), r2 = run(11), r3 = run(12);
    CHECK(r1[2].re == r2[2].re);
    CHECK(r1[2].re != r3[2].re);
    CHECK(std::abs(rat_to_double(r1[2].re) - 9.0) < 0.1);
}

TEST_CASE("depth budget: error without auto-bootstrap, refresh with it") {
    {
        HeContext ctx(4, ArithmeticProfile::exact(), 2, false);
        auto v = ctx.encrypt(ctx.encode({Rat(1, 2), 0, 0, 0}));
        v = ctx.mul(v, v);
        v = ctx.mul(v, v);
        CHECK_THROWS_AS((void)ctx.mul(v, v), DepthBudgetError);
    }
    {
        HeContext ctx(4, ArithmeticProfile::exact(), 2, true);
        auto v = ctx.encrypt(ctx.encode({Rat(1, 2), 0, 0, 0}));
        for (int i = 0; i < 4; ++i) v = ctx.mul(v, v);
        CHECK(ctx.ledger().bootstraps > 0);
        CHECK(v.depth() <= 2);
        // Values are unchanged by the modeled bootstrap: (1/2)^16.
        CHECK(ctx.decrypt(v)[0].re == rat_pow2(-16));
    }
}

TEST_CASE("ledger json round trip and merge") {
    auto ctx = exact_ctx(4);
    auto a = enc(ctx, {1, 2, 3, 4});
    (void)ctx.mul(a, a);
    (void)ctx.rotate(a, 1);
    auto l = ctx.ledger();
    auto back = CostLedger::from_json(l.to_json());
    CHECK(back == l);

    CostLedger other;
    other.ct_mults = 5;
    other.max_depth = 7;
    l.merge(other);
    CHECK(l.ct_mults == back.ct_mults + 5);
    CHECK(l.max_depth == 7);
}

TEST_CASE("context config json round trip") {
    auto j = nlohmann::json::parse(R"({"slot_count": 16, "profile": "fixed:42:16",
                                       "depth_budget": 12, "auto_bootstrap": true, "seed": 3})");
    auto cfg = ContextConfig::from_json(j);
    CHECK(cfg.slot_count == 16);
    CHECK(cfg.profile.mode == ArithMode::FixedPoint);
    CHECK(cfg.profile.int_bits == 16);
    CHECK(cfg.depth_budget == 12u);
    CHECK(cfg.auto_bootstrap);
    auto ctx = cfg.make_context();
    CHECK(ctx.slots() == 16);
    auto round = ContextConfig::from_json(cfg.to_json());
    CHECK(round.slot_count == cfg.slot_count);
    CHECK(round.profile == cfg.profile);
}

TEST_CASE("mismatched contexts are rejected") {
    auto c1 = exact_ctx(4);
    auto c2 = exact_ctx(4);
    auto a = c1.encrypt(c1.encode(std::vector<Rat>{1}));
    auto b = c2.encrypt(c2.encode(std::vector<Rat>{1}));
    CHECK_THROWS_AS((void)c1.add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(c1.encrypt(c2.encode(std::vector<Rat>{1})), std::invalid_argument);
}
