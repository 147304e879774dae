// SPDX-License-Identifier: Apache-2.0
#include "ohsim/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ohsim::repr {

using nlohmann::json;

std::string rep_kind_name(RepKind k) {
    switch (k) {
        case RepKind::OneHot: return "one-hot";
        case RepKind::Numeric: return "numeric";
        case RepKind::Crt: return "crt";
        case RepKind::HierCrt: return "hier-crt";
        case RepKind::NumericHierCrt: return "numeric-hier-crt";
        case RepKind::Binary: return "binary";
    }
    return "?";
}

RepKind rep_kind_parse(const std::string& name) {
    if (name == "one-hot" || name == "onehot") return RepKind::OneHot;
    if (name == "numeric") return RepKind::Numeric;
    if (name == "crt") return RepKind::Crt;
    if (name == "hier-crt" || name == "hierarchical") return RepKind::HierCrt;
    if (name == "numeric-hier-crt" || name == "numeric-crt") return RepKind::NumericHierCrt;
    if (name == "binary") return RepKind::Binary;
    throw std::invalid_argument("unknown representation: " + name);
}

long ceil_log2(long n) {
    if (n <= 1) return 0;
    long bits = 0;
    long v = 1;
    while (v < n) {
        v <<= 1;
        ++bits;
    }
    return bits;
}

long ceil_isqrt(long n) {
    if (n < 0) throw std::invalid_argument("ceil_isqrt of negative");
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while (r * r < n) ++r;
    return r;
}

// ---- ClassMap ----------------------------------------------------------------

ClassMap ClassMap::categorical(std::vector<std::string> labels) {
    ClassMap m;
    m.labels_ = std::move(labels);
    for (std::size_t i = 0; i < m.labels_.size(); ++i)
        for (std::size_t j = i + 1; j < m.labels_.size(); ++j)
            if (m.labels_[i] == m.labels_[j]) throw std::invalid_argument("duplicate category label");
    return m;
}

ClassMap ClassMap::numeric(std::vector<Rat> values, std::optional<std::pair<Rat, Rat>> affine) {
    ClassMap m;
    m.values_ = std::move(values);
    m.affine_ = std::move(affine);
    for (std::size_t i = 0; i < m.values_.size(); ++i)
        for (std::size_t j = i + 1; j < m.values_.size(); ++j)
            if (m.values_[i] == m.values_[j]) throw std::invalid_argument("duplicate category value");
    if (m.affine_) {
        // phi must map the categories bijectively onto {0,...,n-1}.
        std::vector<bool> seen(m.values_.size(), false);
        for (const auto& v : m.values_) {
            Rat idx = m.affine_->first * v + m.affine_->second;
            if (idx.get_den() != 1) throw std::invalid_argument("phi(category) is not an integer");
            long i = static_cast<long>(idx.get_num().get_si());
            if (i < 0 || i >= static_cast<long>(m.values_.size()) || seen[static_cast<std::size_t>(i)])
                throw std::invalid_argument("phi is not a bijection onto [n]");
            seen[static_cast<std::size_t>(i)] = true;
        }
    }
    return m;
}

std::size_t ClassMap::size() const { return labels_.empty() ? values_.size() : labels_.size(); }

long ClassMap::index_of(const Rat& value) const {
    if (affine_) {
        Rat idx = affine_->first * value + affine_->second;
        if (idx.get_den() != 1) throw std::invalid_argument("value not in the category set");
        long i = static_cast<long>(idx.get_num().get_si());
        if (i < 0 || i >= static_cast<long>(size())) throw std::invalid_argument("value not in the category set");
        return i;
    }
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] == value) return static_cast<long>(i);
    throw std::invalid_argument("value not in the category set");
}

long ClassMap::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<long>(i);
    throw std::invalid_argument("label not in the category set");
}

// ---- small reps ----------------------------------------------------------------

long OneHotMap::index() const {
    long idx = -1;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) idx = static_cast<long>(i);
    return idx;
}

void OneHotMap::validate() const {
    int total = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("one-hot map entries must be 0/1");
        total += b;
    }
    if (total != 1) throw std::invalid_argument("one-hot map must have exactly one 1");
}

void GreaterMap::validate() const {
    // 0*1* (or 1*0* for the mirrored form).
    int flips = 0;
    for (std::size_t i = 1; i < bits.size(); ++i)
        if (bits[i] != bits[i - 1]) ++flips;
    if (flips > 1) throw std::invalid_argument("greater map must be a step pattern");
    if (!bits.empty()) {
        int lead = bits.front();
        if (!less_than && lead != 0 && flips == 1) throw std::invalid_argument("greater map must start at 0");
        if (less_than && lead != 1 && flips == 1) throw std::invalid_argument("less-than map must start at 1");
    }
}

OneHotMap one_hot_of(long a, long n) {
    if (a < 0 || a >= n) throw std::invalid_argument("one_hot_of: value out of range");
    OneHotMap m;
    m.bits.assign(static_cast<std::size_t>(n), 0);
    m.bits[static_cast<std::size_t>(a)] = 1;
    return m;
}

BinaryRep binary_of(long a, long n) {
    if (a < 0 || a >= n) throw std::invalid_argument("binary_of: value out of range");
    long width = ceil_log2(n);
    if (width == 0) width = 1;
    BinaryRep b;
    b.bits.assign(static_cast<std::size_t>(width), 0);
    for (long i = 0; i < width; ++i) b.bits[static_cast<std::size_t>(i)] = static_cast<int>((a >> i) & 1);
    return b;
}

GreaterMap greater_map_of(long a, long n, bool less_than) {
    if (a < 0 || a >= n) throw std::invalid_argument("greater_map_of: value out of range");
    GreaterMap g;
    g.less_than = less_than;
    g.bits.assign(static_cast<std::size_t>(n), 0);
    for (long i = 0; i < n; ++i) {
        bool set = less_than ? (i < a) : (i > a);
        g.bits[static_cast<std::size_t>(i)] = set ? 1 : 0;
    }
    return g;
}

// ---- CRT ----------------------------------------------------------------------

CrtBasis CrtBasis::make(std::vector<long> moduli, long n) {
    CrtBasis b;
    b.moduli = std::move(moduli);
    b.n = n;
    b.m = 1;
    for (long q : b.moduli) b.m *= q;
    b.validate();
    return b;
}

long CrtBasis::slot_cost() const { return std::accumulate(moduli.begin(), moduli.end(), 0L); }

void CrtBasis::validate() const {
    if (moduli.empty()) throw std::invalid_argument("CRT basis needs at least one modulus");
    for (long q : moduli)
        if (q < 2) throw std::invalid_argument("CRT moduli must be >= 2");
    for (std::size_t i = 0; i < moduli.size(); ++i)
        for (std::size_t j = i + 1; j < moduli.size(); ++j)
            if (std::gcd(moduli[i], moduli[j]) != 1)
                throw std::invalid_argument("CRT moduli must be pairwise coprime");
    long long prod = 1;
    for (long q : moduli) prod *= q;
    if (prod != m || m < n) throw std::invalid_argument("CRT basis product must equal m and cover n");
}

CrtRep encode_crt(long a, const CrtBasis& basis) {
    if (a < 0 || a >= basis.n) throw std::invalid_argument("encode_crt: value out of range");
    CrtRep r;
    r.basis = basis;
    for (long q : basis.moduli) r.submaps.push_back(one_hot_of(a % q, q));
    return r;
}

long decode_one_hot(const OneHotMap& m) {
    m.validate();
    return m.index();
}

long decode_binary(const BinaryRep& b) {
    long v = 0;
    for (std::size_t i = 0; i < b.bits.size(); ++i)
        if (b.bits[i]) v |= 1L << i;
    return v;
}

namespace {
long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0, y1 = 0;
    long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// value < m1*m2 congruent to r1 (mod m1) and r2 (mod m2); m1, m2 coprime.
long long crt_pair(long long r1, long long m1, long long r2, long long m2) {
    long long x = 0, y = 0;
    long long g = egcd(m1, m2, x, y);
    if (g != 1) throw std::invalid_argument("crt_pair: moduli not coprime");
    long long mm = m1 * m2;
    // a = r1 + m1 * ((r2 - r1) * x mod m2)
    long long diff = ((r2 - r1) % m2 + m2) % m2;
    long long k = (diff * ((x % m2 + m2) % m2)) % m2;
    return (r1 + m1 * k) % mm;
}
}  // namespace

long decode_crt(const CrtRep& r) {
    long long value = 0, modulus = 1;
    for (std::size_t i = 0; i < r.submaps.size(); ++i) {
        long residue = decode_one_hot(r.submaps[i]);
        value = crt_pair(value, modulus, residue, r.basis.moduli[i]);
        modulus *= r.basis.moduli[i];
    }
    if (value >= r.basis.n) throw std::invalid_argument("decode_crt: residues do not encode a value < n");
    return static_cast<long>(value);
}

// ---- hierarchical ---------------------------------------------------------------

std::unique_ptr<HierNode> HierNode::clone() const {
    auto c = std::make_unique<HierNode>();
    c->modulus = modulus;
    if (left) c->left = left->clone();
    if (right) c->right = right->clone();
    return c;
}

namespace {
void split_node(HierNode& node, int levels_left) {
    if (levels_left == 0) return;
    if (node.modulus <= 2)
        throw std::invalid_argument("hierarchy too deep: modulus <= 2 cannot be split");
    long n1 = ceil_isqrt(node.modulus);
    long n2 = n1 + 1;
    node.left = std::make_unique<HierNode>();
    node.left->modulus = n1;
    node.right = std::make_unique<HierNode>();
    node.right->modulus = n2;
    split_node(*node.left, levels_left - 1);
    split_node(*node.right, levels_left - 1);
}

void collect_level(const HierNode& node, int depth, int target, std::vector<long>& out) {
    if (depth == target) {
        out.push_back(node.modulus);
        return;
    }
    if (node.left) collect_level(*node.left, depth + 1, target, out);
    if (node.right) collect_level(*node.right, depth + 1, target, out);
}

void validate_node(const HierNode& node) {
    if (node.is_leaf()) return;
    if (!node.left || !node.right) throw std::invalid_argument("hier node must have two children");
    long c1 = node.left->modulus, c2 = node.right->modulus;
    if (std::gcd(c1, c2) != 1) throw std::invalid_argument("hier children must be coprime");
    if (c1 * c2 < node.modulus) throw std::invalid_argument("hier children product must cover the modulus");
    validate_node(*node.left);
    validate_node(*node.right);
}
}  // namespace

HierBasis build_hier_basis(long n, int levels) {
    if (n < 2) throw std::invalid_argument("build_hier_basis: n must be >= 2");
    if (levels < 1) throw std::invalid_argument("build_hier_basis: levels must be >= 1");
    HierBasis b;
    b.n = n;
    b.levels = levels;
    b.root = std::make_unique<HierNode>();
    b.root->modulus = n;
    split_node(*b.root, levels);
    return b;
}

std::vector<long> HierBasis::per_level_slot_cost() const {
    std::vector<long> out;
    for (int l = 1; l <= levels; ++l) {
        std::vector<long> mods;
        collect_level(*root, 0, l, mods);
        out.push_back(std::accumulate(mods.begin(), mods.end(), 0L));
    }
    return out;
}

std::vector<long> HierBasis::leaf_moduli() const {
    std::vector<long> mods;
    collect_level(*root, 0, levels, mods);
    return mods;
}

long HierBasis::leaf_slot_cost() const {
    auto mods = leaf_moduli();
    return std::accumulate(mods.begin(), mods.end(), 0L);
}

long HierBasis::leaf_count() const { return static_cast<long>(leaf_moduli().size()); }

void HierBasis::validate() const {
    if (!root) throw std::invalid_argument("empty hier basis");
    validate_node(*root);
}

namespace {
std::unique_ptr<HierResidueNode> encode_residues(const HierNode& node, long value, bool with_maps) {
    auto out = std::make_unique<HierResidueNode>();
    out->modulus = node.modulus;
    out->residue = value % node.modulus;
    if (node.is_leaf()) {
        if (with_maps) out->map = one_hot_of(out->residue, node.modulus);
        return out;
    }
    out->left = encode_residues(*node.left, out->residue, with_maps);
    out->right = encode_residues(*node.right, out->residue, with_maps);
    return out;
}

void collect_leaves(const HierResidueNode& node, std::vector<const HierResidueNode*>& out) {
    if (node.is_leaf()) {
        out.push_back(&node);
        return;
    }
    collect_leaves(*node.left, out);
    collect_leaves(*node.right, out);
}

long decode_node(const HierResidueNode& node) {
    if (node.is_leaf()) return node.residue;
    long r1 = decode_node(*node.left);
    long r2 = decode_node(*node.right);
    long long v = crt_pair(r1, node.left->modulus, r2, node.right->modulus);
    if (v >= node.modulus)
        throw std::invalid_argument("decode_hier: inconsistent residues (recombined value exceeds modulus)");
    return static_cast<long>(v);
}
}  // namespace

HierCrtRep encode_hier(long a, const HierBasis& basis, bool numeric) {
    if (a < 0 || a >= basis.n) throw std::invalid_argument("encode_hier: value out of range");
    basis.validate();
    HierCrtRep rep;
    rep.n = basis.n;
    rep.numeric = numeric;
    rep.root = encode_residues(*basis.root, a, !numeric);
    return rep;
}

std::vector<const HierResidueNode*> HierCrtRep::leaves() const {
    std::vector<const HierResidueNode*> out;
    if (root) collect_leaves(*root, out);
    return out;
}

std::vector<long> HierCrtRep::leaf_residues() const {
    std::vector<long> out;
    for (const auto* l : leaves()) out.push_back(l->residue);
    return out;
}

long decode_hier(const HierCrtRep& r) {
    if (!r.root) throw std::invalid_argument("decode_hier: empty representation");
    return decode_node(*r.root);
}

long slot_cost(RepKind kind, long n, const CrtBasis* basis, const HierBasis* hier) {
    switch (kind) {
        case RepKind::OneHot: return n;
        case RepKind::Numeric: return 1;
        case RepKind::Crt:
            if (!basis) throw std::invalid_argument("slot_cost: CRT basis required");
            return basis->slot_cost();
        case RepKind::HierCrt:
            if (!hier) throw std::invalid_argument("slot_cost: hier basis required");
            return hier->leaf_slot_cost();
        case RepKind::NumericHierCrt:
            if (!hier) throw std::invalid_argument("slot_cost: hier basis required");
            return hier->leaf_count();
        case RepKind::Binary: return ceil_log2(n);
    }
    return 0;
}

// ---- moduli search ---------------------------------------------------------------

namespace {
std::vector<long> primes_up_to(long limit) {
    std::vector<bool> sieve(static_cast<std::size_t>(limit) + 1, true);
    std::vector<long> primes;
    for (long p = 2; p <= limit; ++p) {
        if (!sieve[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (long q = p * p; q <= limit; q += p) sieve[static_cast<std::size_t>(q)] = false;
    }
    return primes;
}

struct Candidate {
    long r = 0;
    long long m = 0;
    std::vector<long> moduli;

    bool better_than(const Candidate& o) const {
        if (o.moduli.empty()) return true;
        if (r != o.r) return r < o.r;
        if (m != o.m) return m < o.m;
        return moduli < o.moduli;
    }
};
}  // namespace

BasisResult find_crt_basis(long n, BasisStrategy strategy, long t) {
    if (n < 2) throw std::invalid_argument("find_crt_basis: n must be >= 2");
    Candidate best;

    if (strategy == BasisStrategy::PrimeCombination) {
        // Upper bound on the answer: the greedy product of the smallest primes.
        long long prod = 1;
        long ub = 0;
        for (long p : primes_up_to(std::max(3L, 2 * n))) {
            prod *= p;
            ub += p;
            if (prod >= n) break;
        }
        auto primes = primes_up_to(ub);
        // No optimal subset can contain a prime above ub, so exhausting
        // subsets of this list is a complete search.
        std::size_t count = primes.size();
        for (std::uint64_t mask = 1; mask < (1ull << count); ++mask) {
            long r = 0;
            long long m = 1;
            bool overflow = false;
            std::vector<long> mods;
            for (std::size_t i = 0; i < count; ++i) {
                if (!(mask & (1ull << i))) continue;
                r += primes[i];
                if (m > (1ll << 62) / primes[i]) {
                    overflow = true;
                    break;
                }
                m *= primes[i];
                mods.push_back(primes[i]);
            }
            if (overflow || m < n || r > ub) continue;
            Candidate c{r, m, std::move(mods)};
            if (c.better_than(best)) best = std::move(c);
        }
    } else {
        for (long long m = n; m <= static_cast<long long>(n) + t; ++m) {
            // Coprime factorization minimizing the slot sum: prime powers.
            long long rest = m;
            std::vector<long> mods;
            for (long long p = 2; p * p <= rest; ++p) {
                if (rest % p) continue;
                long long pe = 1;
                while (rest % p == 0) {
                    pe *= p;
                    rest /= p;
                }
                mods.push_back(static_cast<long>(pe));
            }
            if (rest > 1) mods.push_back(static_cast<long>(rest));
            if (mods.size() < 2) continue;  // single prime power: no smaller than trivial
            std::sort(mods.begin(), mods.end());
            long r = std::accumulate(mods.begin(), mods.end(), 0L);
            if (r >= n) continue;  // not an improvement over the trivial basis
            Candidate c{r, m, std::move(mods)};
            if (c.better_than(best)) best = std::move(c);
        }
        if (best.moduli.empty()) {
            BasisResult out;
            out.basis = CrtBasis::make({n}, n);
            out.warning = true;
            return out;
        }
    }

    if (best.moduli.empty()) throw std::invalid_argument("find_crt_basis: no basis found");
    BasisResult out;
    std::sort(best.moduli.begin(), best.moduli.end());
    out.basis = CrtBasis::make(best.moduli, n);
    return out;
}

// ---- JSON ------------------------------------------------------------------------

json to_json(const OneHotMap& m) { return json(m.bits); }
json to_json(const BinaryRep& b) { return json(b.bits); }

json to_json(const GreaterMap& g) {
    return json{{"bits", g.bits}, {"orientation", g.less_than ? "less-than" : "greater"}};
}

json to_json(const CrtBasis& b) {
    return json{{"moduli", b.moduli}, {"m", b.m}, {"n", b.n}, {"slot_cost", b.slot_cost()}};
}

json to_json(const CrtRep& r) {
    json maps = json::array();
    for (const auto& m : r.submaps) maps.push_back(to_json(m));
    return json{{"basis", to_json(r.basis)}, {"submaps", maps}};
}

namespace {
json hier_node_json(const HierNode& n) {
    json j{{"modulus", n.modulus}};
    if (!n.is_leaf()) {
        j["left"] = hier_node_json(*n.left);
        j["right"] = hier_node_json(*n.right);
    }
    return j;
}

json hier_res_json(const HierResidueNode& n, bool numeric) {
    json j{{"modulus", n.modulus}, {"residue", n.residue}};
    if (n.is_leaf()) {
        if (!numeric) j["map"] = json(n.map.bits);
    } else {
        j["left"] = hier_res_json(*n.left, numeric);
        j["right"] = hier_res_json(*n.right, numeric);
    }
    return j;
}
}  // namespace

json to_json(const HierBasis& b) {
    return json{{"n", b.n}, {"levels", b.levels}, {"tree", hier_node_json(*b.root)}};
}

json to_json(const HierCrtRep& r) {
    return json{{"n", r.n}, {"numeric", r.numeric}, {"tree", hier_res_json(*r.root, r.numeric)}};
}

}  // namespace ohsim::repr
