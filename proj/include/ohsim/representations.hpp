// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ohsim/rational.hpp"

namespace ohsim::repr {

/// The six client-side input representations.
enum class RepKind { OneHot, Numeric, Crt, HierCrt, NumericHierCrt, Binary };

std::string rep_kind_name(RepKind k);
RepKind rep_kind_parse(const std::string& name);

long ceil_log2(long n);
long ceil_isqrt(long n);

/// Ordered category list with an optional affine index map
/// phi(a) = scale * a + offset carrying category values onto {0,...,n-1}.
class ClassMap {
public:
    static ClassMap categorical(std::vector<std::string> labels);
    static ClassMap numeric(std::vector<Rat> values,
                            std::optional<std::pair<Rat, Rat>> affine = std::nullopt);

    std::size_t size() const;
    bool is_numeric() const { return !values_.empty(); }
    const std::vector<Rat>& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::optional<std::pair<Rat, Rat>>& affine() const { return affine_; }

    long index_of(const Rat& value) const;
    long index_of(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::vector<Rat> values_;
    std::optional<std::pair<Rat, Rat>> affine_;
};

/// Length-n 0/1 vector with exactly one 1.
struct OneHotMap {
    std::vector<int> bits;
    long index() const;
    void validate() const;
};

/// 0*1* step vector: bits[i] = 1 exactly when i > a (strict greater map) or
/// i < a when less_than is set.
struct GreaterMap {
    std::vector<int> bits;
    bool less_than = false;
    void validate() const;
};

/// Little-endian bit vector: value = sum bits[i] * 2^i.
struct BinaryRep {
    std::vector<int> bits;
};

/// Pairwise-coprime moduli n_1..n_k with product m >= n.
struct CrtBasis {
    std::vector<long> moduli;
    long long m = 0;  // product of the moduli
    long n = 0;       // represented range

    static CrtBasis make(std::vector<long> moduli, long n);
    long slot_cost() const;
    void validate() const;
};

struct CrtRep {
    CrtBasis basis;
    std::vector<OneHotMap> submaps;
};

/// Modulus tree for the hierarchical representation. Internal nodes carry the
/// modulus being split; both children of a node with modulus q are coprime
/// consecutive integers (ceil(sqrt(q)), ceil(sqrt(q)) + 1) when built by
/// build_hier_basis, but any coprime cover with left*right >= q is accepted.
struct HierNode {
    long modulus = 0;
    std::unique_ptr<HierNode> left;
    std::unique_ptr<HierNode> right;

    bool is_leaf() const { return !left; }
    std::unique_ptr<HierNode> clone() const;
};

struct HierBasis {
    long n = 0;
    int levels = 0;
    std::unique_ptr<HierNode> root;

    HierBasis() = default;
    HierBasis(const HierBasis& o) : n(o.n), levels(o.levels), root(o.root ? o.root->clone() : nullptr) {}
    HierBasis(HierBasis&&) = default;
    HierBasis& operator=(HierBasis o) { std::swap(n, o.n); std::swap(levels, o.levels); std::swap(root, o.root); return *this; }

    /// m_1, m_2, ... : total slot cost had the client stopped at each level.
    std::vector<long> per_level_slot_cost() const;
    std::vector<long> leaf_moduli() const;
    long leaf_slot_cost() const;
    long leaf_count() const;
    void validate() const;
};

/// Residue tree produced by encoding one value a against a HierBasis;
/// leaves optionally carry their one-hot submaps.
struct HierResidueNode {
    long modulus = 0;
    long residue = 0;
    std::unique_ptr<HierResidueNode> left;
    std::unique_ptr<HierResidueNode> right;
    OneHotMap map;  // populated at leaves when with_maps

    bool is_leaf() const { return !left; }
};

struct HierCrtRep {
    long n = 0;
    std::unique_ptr<HierResidueNode> root;
    bool numeric = false;  // true: leaves carry residues only, no maps

    std::vector<long> leaf_residues() const;
    std::vector<const HierResidueNode*> leaves() const;
};

// ---- encoders --------------------------------------------------------------

OneHotMap one_hot_of(long a, long n);
BinaryRep binary_of(long a, long n);
GreaterMap greater_map_of(long a, long n, bool less_than = false);
CrtRep encode_crt(long a, const CrtBasis& basis);
HierCrtRep encode_hier(long a, const HierBasis& basis, bool numeric = false);

/// Client-upload size in slots for each representation of a range-n value.
long slot_cost(RepKind kind, long n, const CrtBasis* basis = nullptr,
               const HierBasis* hier = nullptr);

// ---- decoders (client-side plaintext utilities) ----------------------------

long decode_one_hot(const OneHotMap& m);
long decode_binary(const BinaryRep& b);
/// Extended-Euclid CRT recombination of the submap residues.
long decode_crt(const CrtRep& r);
long decode_hier(const HierCrtRep& r);

// ---- moduli search ----------------------------------------------------------

enum class BasisStrategy { PrimeCombination, ScanRange };

struct BasisResult {
    CrtBasis basis;
    /// Set when scan-range found nothing better than the trivial one-modulus
    /// basis and returned that instead.
    bool warning = false;
};

/// Finds a pairwise-coprime basis with m >= n minimizing r = sum(moduli).
/// Deterministic: ties broken by smaller m, then lexicographically smaller
/// moduli list. ScanRange factors every m in [n, n+t] into prime powers.
BasisResult find_crt_basis(long n, BasisStrategy strategy = BasisStrategy::PrimeCombination,
                           long t = 0);

/// Splits n into (ceil(sqrt(n)), ceil(sqrt(n))+1) recursively for `levels`
/// levels. Throws when a modulus <= 2 would have to be split.
HierBasis build_hier_basis(long n, int levels);

// ---- JSON -------------------------------------------------------------------

nlohmann::json to_json(const OneHotMap& m);
nlohmann::json to_json(const BinaryRep& b);
nlohmann::json to_json(const GreaterMap& g);
nlohmann::json to_json(const CrtBasis& b);
nlohmann::json to_json(const CrtRep& r);
nlohmann::json to_json(const HierBasis& b);
nlohmann::json to_json(const HierCrtRep& r);

}  // namespace ohsim::repr
