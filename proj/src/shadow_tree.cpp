// SPDX-License-Identifier: Apache-2.0
#include "ohsim/shadow_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace ohsim::conv {

using nlohmann::json;

namespace {

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

std::vector<long> set_intersection(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<long> set_difference(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Rat product_of(const std::vector<long>& s) {
    Rat p = 1;
    for (long v : s) p *= Rat(v);
    return p;
}

}  // namespace

std::vector<Rat> lagrange_denominators(long n) {
    std::vector<Rat> S(static_cast<std::size_t>(n));
    for (long c = 0; c < n; ++c) {
        Rat p = 1;
        for (long i = 0; i < n; ++i) {
            if (i == c) continue;
            p *= Rat(c - i);
        }
        S[static_cast<std::size_t>(c)] = p;
    }
    return S;
}

ShadowTree ShadowTree::build(long n) {
    if (!is_pow2(n) || n < 2) throw std::invalid_argument("shadow tree needs a power-of-two leaf count >= 2");
    ShadowTree t;
    t.n_ = n;
    t.levels_ = 0;
    for (long v = 1; v < n; v <<= 1) ++t.levels_;

    std::size_t size = static_cast<std::size_t>(2 * n);
    t.phase1_sets_.assign(size, {});
    t.sets_.assign(size, {});
    t.constants_.assign(size, Rat(1));

    // Phase 1: leaves hold the full difference sets, parents absorb the
    // intersection of their children, children keep the residual.
    std::vector<std::vector<long>> cur(static_cast<std::size_t>(n));
    for (long c = 0; c < n; ++c) {
        std::vector<long>& s = cur[static_cast<std::size_t>(c)];
        for (long i = n - 1; i >= 0; --i) {
            if (i == c) continue;
            s.push_back(c - i);  // ascending: c-(n-1) ... up to c
        }
    }
    long level_nodes = n;
    while (level_nodes > 1) {
        long heap_base = level_nodes;  // heap index of the first node whose set is in `cur`
        std::vector<std::vector<long>> next(static_cast<std::size_t>(level_nodes / 2));
        for (long i = 0; i < level_nodes / 2; ++i) {
            const auto& sl = cur[static_cast<std::size_t>(2 * i)];
            const auto& sr = cur[static_cast<std::size_t>(2 * i + 1)];
            auto inter = set_intersection(sl, sr);
            t.phase1_sets_[static_cast<std::size_t>(heap_base + 2 * i)] = set_difference(sl, inter);
            t.phase1_sets_[static_cast<std::size_t>(heap_base + 2 * i + 1)] = set_difference(sr, inter);
            next[static_cast<std::size_t>(i)] = std::move(inter);
        }
        cur = std::move(next);
        level_nodes /= 2;
    }
    if (!cur[0].empty())
        throw std::logic_error("shadow tree: root set not empty, leaf sets were inconsistent");

    // Phase 2: swap each node's set with its sibling's, relocating every
    // leaf's S[c] elements onto the sibling path that the interpolation walk
    // multiplies.
    t.sets_ = t.phase1_sets_;
    for (std::size_t v = 2; v < size; v += 2) std::swap(t.sets_[v], t.sets_[v + 1]);

    // Phase 3: node constants. Dividing by the children's products ensures a
    // walk never multiplies an element twice.
    for (std::size_t v = 2; v < static_cast<std::size_t>(n); ++v) {
        Rat own = product_of(t.sets_[v]);
        Rat children = product_of(t.sets_[2 * v]) * product_of(t.sets_[2 * v + 1]);
        if (sgn(own) == 0 || sgn(children) == 0) throw std::logic_error("shadow tree: zero product");
        t.constants_[v] = children / own;  // (own / children)^-1
    }
    for (std::size_t v = static_cast<std::size_t>(n); v < size; ++v) {
        Rat own = product_of(t.sets_[v]);
        if (sgn(own) == 0) throw std::logic_error("shadow tree: zero leaf product");
        t.constants_[v] = 1 / own;
    }
    return t;
}

Rat ShadowTree::subtree_product(std::size_t v) const {
    if (v >= constants_.size()) throw std::invalid_argument("subtree_product: bad node");
    if (v >= static_cast<std::size_t>(n_)) return constants_[v];
    Rat p = constants_[v] * subtree_product(2 * v) * subtree_product(2 * v + 1);
    return p;
}

Rat ShadowTree::min_positive() const {
    Rat best = 0;
    for (std::size_t v = 2; v < constants_.size(); ++v) {
        const Rat& c = constants_[v];
        if (sgn(c) <= 0) continue;
        if (sgn(best) == 0 || c < best) best = c;
    }
    return best;
}

Rat ShadowTree::max_positive() const {
    Rat best = 0;
    for (std::size_t v = 2; v < constants_.size(); ++v) {
        const Rat& c = constants_[v];
        if (sgn(c) > 0 && c > best) best = c;
    }
    return best;
}

namespace {
json node_json(const ShadowTree& t, std::size_t v) {
    const Rat& c = t.constant(v);
    json j{{"num", t.constant(v).get_num().get_str()}, {"den", c.get_den().get_str()}};
    if (v < static_cast<std::size_t>(t.leaf_count())) {
        j["left"] = node_json(t, 2 * v);
        j["right"] = node_json(t, 2 * v + 1);
    }
    return j;
}
}  // namespace

json ShadowTree::to_json() const {
    return json{{"leaves", n_}, {"levels", levels_}, {"tree", node_json(*this, 1)}};
}

ShadowTree ShadowTree::from_json(const json& j) {
    long n = j.at("leaves").get<long>();
    ShadowTree t = build(n);  // shape and sets are deterministic in n
    // Overwrite constants from the document (they are the payload).
    std::vector<Rat> parsed(static_cast<std::size_t>(2 * n), Rat(1));
    struct Walk {
        static void run(const json& node, std::size_t v, long n, std::vector<Rat>& out) {
            Rat c(mpz_class(node.at("num").get<std::string>()),
                  mpz_class(node.at("den").get<std::string>()));
            c.canonicalize();
            out[v] = c;
            if (v < static_cast<std::size_t>(n)) {
                run(node.at("left"), 2 * v, n, out);
                run(node.at("right"), 2 * v + 1, n, out);
            }
        }
    };
    Walk::run(j.at("tree"), 1, n, parsed);
    t.constants_ = std::move(parsed);
    return t;
}

}  // namespace ohsim::conv
