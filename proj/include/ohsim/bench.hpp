// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ohsim/config.hpp"
#include "ohsim/representations.hpp"

namespace ohsim::bench {

/// Weighted-op cost standing in for wall-clock; the weights are data, not
/// code, so a config can re-balance them.
struct CostWeights {
    double ct_mult = 1.0;
    double pt_mult = 0.1;
    double add = 0.05;
    double rotation = 0.05;
    double conjugation = 0.05;

    double cost(const CostLedger& l) const {
        return ct_mult * static_cast<double>(l.ct_mults) + pt_mult * static_cast<double>(l.pt_mults) +
               add * static_cast<double>(l.adds) + rotation * static_cast<double>(l.rotations) +
               conjugation * static_cast<double>(l.conjugations);
    }

    static CostWeights from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// One output row. The CSV emits exactly the declared fields in declared
/// order; the JSON form carries a few extra keys (adds, bootstraps,
/// pt_free_depth) for the dual depth-accounting convention.
struct BenchRecord {
    std::string name;
    long n = 0;
    long bandwidth_slots = 0;
    std::uint64_t ct_mults = 0;
    std::uint64_t pt_mults = 0;
    std::uint64_t rotations = 0;
    std::uint64_t conjugations = 0;
    std::uint64_t depth = 0;
    double simulated_cost = 0.0;
    double max_abs_error = 0.0;
    bool overflowed = false;

    std::uint64_t adds = 0;
    std::uint64_t bootstraps = 0;
    std::uint64_t pt_free_depth = 0;
};

struct ExperimentSpec {
    std::string experiment;  // tradeoff | num2onehot | shadow-bounds | comparators
    std::vector<long> n_values;
    std::vector<repr::RepKind> representations;
    std::string shape;  // "[m/1,n/s]" (per-sample slots) or "[n/1,m/s]" (rows)
    ContextConfig context;
    CostWeights weights;
    int sharpen_iters = 0;  // 0: auto ceil(log2 n) + 1
    int zt_iters = 0;       // 0: auto ceil(log2 width) + 3
    long batch = 0;         // samples per tradeoff cell; 0: default 4
    int max_level = 8;      // shadow-bounds
    std::string out_path;
    std::string format = "csv";

    static ExperimentSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

struct ShadowBoundsRow {
    int level = 0;
    Rat exact_min;
    Rat exact_max;
    double min_positive = 0.0;
    double max_positive = 0.0;
    double log2_min = 0.0;
    double log2_max = 0.0;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<BenchRecord> records;
    std::vector<ShadowBoundsRow> shadow_rows;  // shadow-bounds only
};

std::vector<BenchRecord> run_tradeoff(const ExperimentSpec& spec);
std::vector<BenchRecord> run_num2onehot(const ExperimentSpec& spec);
std::vector<ShadowBoundsRow> run_shadow_bounds(int max_level);
std::vector<BenchRecord> run_comparator_suite(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string records_to_csv(const std::vector<BenchRecord>& records);
nlohmann::json records_to_json(const std::vector<BenchRecord>& records);
std::string shadow_rows_to_csv(const std::vector<ShadowBoundsRow>& rows);
nlohmann::json shadow_rows_to_json(const std::vector<ShadowBoundsRow>& rows);
/// Renders per spec.format ("csv" or "json").
std::string render(const ExperimentResult& result, const std::string& format);

/// Deepest hierarchy (up to 3 levels) that stays splittable, preferring the
/// smallest leaf slot cost; how the bench picks the client's hierarchy.
repr::HierBasis pick_hier_basis(long n);

}  // namespace ohsim::bench
