// SPDX-License-Identifier: Apache-2.0
#include "ohsim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ohsim/comparators.hpp"
#include "ohsim/conversions.hpp"
#include "ohsim/packing.hpp"

namespace ohsim::bench {

using nlohmann::json;

CostWeights CostWeights::from_json(const json& j) {
    CostWeights w;
    w.ct_mult = j.value("ct_mult", 1.0);
    w.pt_mult = j.value("pt_mult", 0.1);
    w.add = j.value("add", 0.05);
    w.rotation = j.value("rotation", 0.05);
    w.conjugation = j.value("conjugation", 0.05);
    return w;
}

json CostWeights::to_json() const {
    return json{{"ct_mult", ct_mult},
                {"pt_mult", pt_mult},
                {"add", add},
                {"rotation", rotation},
                {"conjugation", conjugation}};
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    ExperimentSpec s;
    s.experiment = j.at("experiment").get<std::string>();
    if (j.contains("n")) s.n_values = j.at("n").get<std::vector<long>>();
    if (j.contains("representations"))
        for (const auto& r : j.at("representations"))
            s.representations.push_back(repr::rep_kind_parse(r.get<std::string>()));
    s.shape = j.value("shape", std::string{});
    if (j.contains("context")) s.context = ContextConfig::from_json(j.at("context"));
    if (j.contains("cost_weights")) s.weights = CostWeights::from_json(j.at("cost_weights"));
    s.sharpen_iters = j.value("sharpen_iters", 0);
    s.zt_iters = j.value("zt_iters", 0);
    s.batch = j.value("batch", 0L);
    s.max_level = j.value("max_level", 8);
    s.out_path = j.value("out", std::string{});
    s.format = j.value("format", std::string{"csv"});
    s.validate();
    return s;
}

json ExperimentSpec::to_json() const {
    json reps = json::array();
    for (auto r : representations) reps.push_back(repr::rep_kind_name(r));
    return json{{"experiment", experiment},
                {"n", n_values},
                {"representations", reps},
                {"shape", shape},
                {"context", context.to_json()},
                {"cost_weights", weights.to_json()},
                {"sharpen_iters", sharpen_iters},
                {"zt_iters", zt_iters},
                {"batch", batch},
                {"max_level", max_level},
                {"out", out_path},
                {"format", format}};
}

void ExperimentSpec::validate() const {
    if (experiment != "tradeoff" && experiment != "num2onehot" && experiment != "shadow-bounds" &&
        experiment != "comparators")
        throw std::invalid_argument("unknown experiment: " + experiment);
    for (long n : n_values)
        if (n <= 0) throw std::invalid_argument("n values must be positive");
    if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kOverflowError = std::numeric_limits<double>::infinity();

std::uint64_t widest_depth(const std::vector<CipherVec>& rows) {
    std::uint64_t d = 0;
    for (const auto& r : rows) d = std::max<std::uint64_t>(d, r.depth());
    return d;
}

std::uint64_t widest_pt_free_depth(const std::vector<CipherVec>& rows) {
    std::uint64_t d = 0;
    for (const auto& r : rows) d = std::max<std::uint64_t>(d, r.pt_free_depth());
    return d;
}

void fill_costs(BenchRecord& rec, const CostLedger& delta, const CostWeights& w, double amortize_by) {
    rec.ct_mults = delta.ct_mults;
    rec.pt_mults = delta.pt_mults;
    rec.rotations = delta.rotations;
    rec.conjugations = delta.conjugations;
    rec.adds = delta.adds;
    rec.bootstraps = delta.bootstraps;
    rec.simulated_cost = w.cost(delta) / std::max(1.0, amortize_by);
}

double slot_error_against_one_hot(HeContext& ctx, const CipherVec& map, long n, long hot) {
    auto slots = ctx.decrypt(map);
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        double expect = i == hot ? 1.0 : 0.0;
        CSlot s = slots[static_cast<std::size_t>(i)];
        double err = std::abs(s.abs_double() - expect);
        // abs() collapses the sign; compare the real part directly too.
        err = std::max(err, std::abs(rat_to_double(s.re) - expect));
        worst = std::max(worst, err);
    }
    return worst;
}

double rows_error_against_one_hot(HeContext& ctx, const conv::OneHotRows& rows,
                                  const std::vector<long>& xs) {
    double worst = 0.0;
    for (std::size_t c = 0; c < rows.rows.size(); ++c) {
        auto slots = ctx.decrypt(rows.rows[c]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double expect = xs[j] == static_cast<long>(c) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(rat_to_double(slots[j].re) - expect));
        }
    }
    return worst;
}

cmp::EqConfig eq_config_for(const ExperimentSpec& spec, long n) {
    cmp::EqConfig cfg = cmp::EqConfig::for_domain(n);
    if (spec.sharpen_iters > 0) {
        cfg.sharpen_iters = spec.sharpen_iters;
        cfg.beta = cfg.error_bound();
    }
    return cfg;
}

}  // namespace

repr::HierBasis pick_hier_basis(long n) {
    repr::HierBasis best;
    long best_cost = -1;
    for (int levels = 1; levels <= 3; ++levels) {
        try {
            repr::HierBasis b = repr::build_hier_basis(n, levels);
            long cost = b.leaf_slot_cost();
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = std::move(b);
            }
        } catch (const std::invalid_argument&) {
            break;  // too deep for this n
        }
    }
    if (best_cost < 0) throw std::invalid_argument("no hierarchical basis for n");
    return best;
}

// ---- tradeoff ---------------------------------------------------------------

namespace {

/// Per-sample slot-layout conversion of one encoded element; returns the
/// resulting map (first n slots) for error measurement.
CipherVec convert_one(HeContext& ctx, repr::RepKind kind, long n, long x,
                      const repr::CrtBasis& crt_basis, const repr::HierBasis& hier_basis,
                      const cmp::EqConfig& eq_cfg) {
    switch (kind) {
        case repr::RepKind::OneHot: {
            auto map = repr::one_hot_of(x, n);
            std::vector<Rat> vals(map.bits.begin(), map.bits.end());
            return ctx.encrypt(ctx.encode(vals));  // server does nothing
        }
        case repr::RepKind::Numeric: {
            CipherVec xr = ctx.encrypt(ctx.encode_scalar(Rat(x)));
            return conv::numeric_to_one_hot_naive(ctx, xr, n, eq_cfg);
        }
        case repr::RepKind::Crt: {
            auto rep = repr::encode_crt(x, crt_basis);
            conv::CrtCipherRep srv;
            srv.basis = rep.basis;
            for (const auto& sm : rep.submaps) {
                std::vector<Rat> vals(sm.bits.begin(), sm.bits.end());
                srv.submaps.push_back(ctx.encrypt(ctx.encode(vals)));
            }
            return conv::crt_to_one_hot(ctx, srv);
        }
        case repr::RepKind::HierCrt: {
            auto rep = repr::encode_hier(x, hier_basis);
            conv::HierCipherRep srv;
            srv.basis = hier_basis;
            for (const auto* leaf : rep.leaves()) {
                std::vector<Rat> vals(leaf->map.bits.begin(), leaf->map.bits.end());
                srv.leaf_maps.push_back(ctx.encrypt(ctx.encode(vals)));
            }
            return conv::hier_crt_to_one_hot(ctx, srv);
        }
        case repr::RepKind::NumericHierCrt: {
            auto rep = repr::encode_hier(x, hier_basis, /*numeric=*/true);
            conv::HierCipherRep srv;
            srv.basis = hier_basis;
            for (const auto* leaf : rep.leaves()) {
                CipherVec xr = ctx.encrypt(ctx.encode_scalar(Rat(leaf->residue)));
                cmp::EqConfig leaf_cfg = cmp::EqConfig::for_domain(leaf->modulus);
                srv.leaf_maps.push_back(
                    conv::numeric_to_one_hot_naive(ctx, xr, leaf->modulus, leaf_cfg));
            }
            return conv::hier_crt_to_one_hot(ctx, srv);
        }
        case repr::RepKind::Binary: {
            long np = 1;
            while (np < n) np <<= 1;
            auto bits = repr::binary_of(x, np);
            std::vector<CipherVec> cts;
            for (int b : bits.bits) cts.push_back(ctx.encrypt(ctx.encode_scalar(Rat(b))));
            return conv::binary_to_one_hot(ctx, cts, np);
        }
    }
    throw std::invalid_argument("unknown representation");
}

}  // namespace

std::vector<BenchRecord> run_tradeoff(const ExperimentSpec& spec) {
    std::vector<BenchRecord> out;
    std::vector<repr::RepKind> reps = spec.representations;
    if (reps.empty())
        reps = {repr::RepKind::Numeric, repr::RepKind::Binary, repr::RepKind::HierCrt,
                repr::RepKind::Crt, repr::RepKind::OneHot};
    long batch = spec.batch > 0 ? spec.batch : 4;

    for (long n : spec.n_values) {
        repr::CrtBasis crt_basis = repr::find_crt_basis(n).basis;
        repr::HierBasis hier_basis = pick_hier_basis(n);
        for (auto kind : reps) {
            HeContext ctx = spec.context.make_context();
            if (static_cast<long>(ctx.slots()) < crt_basis.m)
                throw std::invalid_argument("tradeoff: slot count too small for the CRT product");
            cmp::EqConfig eq_cfg = eq_config_for(spec, n);
            std::mt19937_64 rng(spec.context.seed + static_cast<std::uint64_t>(n));
            std::uniform_int_distribution<long> dist(0, n - 1);

            BenchRecord rec;
            rec.name = repr::rep_kind_name(kind);
            rec.n = n;
            rec.bandwidth_slots = repr::slot_cost(kind, n, &crt_basis, &hier_basis);
            CostLedger before = ctx.ledger();
            double worst = 0.0;
            std::uint64_t depth = 0, pt_free = 0;
            bool overflowed = false;
            for (long j = 0; j < batch && !overflowed; ++j) {
                long x = dist(rng);
                try {
                    CipherVec map = convert_one(ctx, kind, n, x, crt_basis, hier_basis, eq_cfg);
                    worst = std::max(worst, slot_error_against_one_hot(ctx, map, n, x));
                    depth = std::max<std::uint64_t>(depth, map.depth());
                    pt_free = std::max<std::uint64_t>(pt_free, map.pt_free_depth());
                } catch (const OverflowError&) {
                    overflowed = true;
                }
            }
            CostLedger delta = ctx.ledger().delta(before);
            fill_costs(rec, delta, spec.weights, static_cast<double>(batch));
            rec.depth = depth;
            rec.pt_free_depth = pt_free;
            rec.max_abs_error = overflowed ? kOverflowError : worst;
            rec.overflowed = overflowed;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

// ---- num2onehot ---------------------------------------------------------------

std::vector<BenchRecord> run_num2onehot(const ExperimentSpec& spec) {
    std::vector<BenchRecord> out;
    std::vector<long> ns = spec.n_values;
    if (ns.empty()) ns = {4, 8, 16, 32, 64};
    const char* variants[] = {"alg1", "alg2", "alg1+shadow", "alg2+shadow", "eq"};

    for (long n : ns) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw std::invalid_argument("num2onehot: n values must be powers of two >= 2");
        conv::ShadowTree shadow = conv::ShadowTree::build(n);
        for (const char* variant : variants) {
            HeContext ctx = spec.context.make_context();
            if (static_cast<long>(ctx.slots()) < n)
                throw std::invalid_argument("num2onehot: slot count below n");
            // Sweep all x in [n] at once across sample slots.
            std::vector<Rat> xs_vals(static_cast<std::size_t>(n));
            std::vector<long> xs(static_cast<std::size_t>(n));
            for (long j = 0; j < n; ++j) {
                xs_vals[static_cast<std::size_t>(j)] = j;
                xs[static_cast<std::size_t>(j)] = j;
            }
            CipherVec x = ctx.encrypt(ctx.encode(xs_vals));

            BenchRecord rec;
            rec.name = variant;
            rec.n = n;
            rec.bandwidth_slots = 1;
            CostLedger before = ctx.ledger();
            try {
                std::string v(variant);
                conv::OneHotRows rows;
                if (v == "eq") {
                    rows = conv::numeric_to_one_hot_naive_rows(ctx, x, n, eq_config_for(spec, n));
                } else {
                    conv::LagrangeOptions opt;
                    if (v.find("shadow") != std::string::npos) opt.shadow = &shadow;
                    rows = v.rfind("alg1", 0) == 0 ? conv::numeric_to_one_hot_alg1(ctx, x, n, opt)
                                                   : conv::numeric_to_one_hot_alg2(ctx, x, n, opt);
                }
                rec.max_abs_error = rows_error_against_one_hot(ctx, rows, xs);
                rec.depth = widest_depth(rows.rows);
                rec.pt_free_depth = widest_pt_free_depth(rows.rows);
            } catch (const OverflowError&) {
                rec.overflowed = true;
                rec.max_abs_error = kOverflowError;
                rec.depth = ctx.ledger().max_depth;
            }
            fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

// ---- shadow bounds --------------------------------------------------------------

std::vector<ShadowBoundsRow> run_shadow_bounds(int max_level) {
    if (max_level < 2 || max_level > 8)
        throw std::invalid_argument("shadow-bounds: max_level must be in [2, 8]");
    std::vector<ShadowBoundsRow> rows;
    for (int level = 2; level <= max_level; ++level) {
        conv::ShadowTree t = conv::ShadowTree::build(1L << level);
        ShadowBoundsRow row;
        row.level = level;
        row.exact_min = t.min_positive();
        row.exact_max = t.max_positive();
        row.min_positive = rat_to_double(row.exact_min);
        row.max_positive = rat_to_double(row.exact_max);
        row.log2_min = std::log2(row.min_positive);
        row.log2_max = std::log2(row.max_positive);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- comparators ------------------------------------------------------------------

namespace {

/// All 2^(2w) (a, b) pairs packed across slots as per-bit vectors.
cmp::BitVecPair exhaustive_pairs(HeContext& ctx, long width) {
    long cases = 1L << (2 * width);
    if (static_cast<long>(ctx.slots()) < cases)
        throw std::invalid_argument("comparators: slot count below the exhaustive case count");
    cmp::BitVecPair p;
    for (long bit = 0; bit < width; ++bit) {
        std::vector<Rat> av(static_cast<std::size_t>(cases)), bv(static_cast<std::size_t>(cases));
        for (long idx = 0; idx < cases; ++idx) {
            long a = idx >> width, b = idx & ((1L << width) - 1);
            av[static_cast<std::size_t>(idx)] = (a >> bit) & 1;
            bv[static_cast<std::size_t>(idx)] = (b >> bit) & 1;
        }
        p.a.push_back(ctx.encrypt(ctx.encode(av)));
        p.b.push_back(ctx.encrypt(ctx.encode(bv)));
    }
    return p;
}

double equality_error(HeContext& ctx, const CipherVec& result, long width) {
    long cases = 1L << (2 * width);
    auto slots = ctx.decrypt(result);
    double worst = 0.0;
    for (long idx = 0; idx < cases; ++idx) {
        long a = idx >> width, b = idx & ((1L << width) - 1);
        double expect = a == b ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(rat_to_double(slots[static_cast<std::size_t>(idx)].re) - expect));
    }
    return worst;
}

}  // namespace

std::vector<BenchRecord> run_comparator_suite(const ExperimentSpec& spec) {
    std::vector<BenchRecord> out;
    std::vector<long> widths = spec.n_values;
    if (widths.empty()) widths = {2, 3, 4};

    for (long w : widths) {
        int zt = spec.zt_iters > 0 ? spec.zt_iters : cmp::default_zt_iters(w);
        // bitvec_equal
        {
            HeContext ctx = spec.context.make_context();
            auto p = exhaustive_pairs(ctx, w);
            CostLedger before = ctx.ledger();
            CipherVec r = cmp::bitvec_equal(ctx, p);
            BenchRecord rec;
            rec.name = "bitvec";
            rec.n = w;
            rec.bandwidth_slots = 2 * w;
            fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
            rec.depth = r.depth();
            rec.pt_free_depth = r.pt_free_depth();
            rec.max_abs_error = equality_error(ctx, r, w);
            out.push_back(std::move(rec));
        }
        // xorsum
        {
            HeContext ctx = spec.context.make_context();
            auto p = exhaustive_pairs(ctx, w);
            CostLedger before = ctx.ledger();
            CipherVec r = cmp::bitvec_equal_xorsum(ctx, p, zt);
            BenchRecord rec;
            rec.name = "xorsum";
            rec.n = w;
            rec.bandwidth_slots = 2 * w;
            fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
            rec.depth = r.depth();
            rec.pt_free_depth = r.pt_free_depth();
            rec.max_abs_error = equality_error(ctx, r, w);
            out.push_back(std::move(rec));
        }
        // complex packing (even widths)
        if (w % 2 == 0) {
            HeContext ctx = spec.context.make_context();
            auto p = exhaustive_pairs(ctx, w);
            auto packed = cmp::pack_bits_complex(ctx, p);
            CostLedger before = ctx.ledger();
            CipherVec r = cmp::bitvec_equal_complex(ctx, packed, zt);
            BenchRecord rec;
            rec.name = "complex";
            rec.n = w;
            rec.bandwidth_slots = w;  // packed pairs halve the upload
            fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
            rec.depth = r.depth();
            rec.pt_free_depth = r.pt_free_depth();
            rec.max_abs_error = equality_error(ctx, r, w);
            out.push_back(std::move(rec));
        }
    }

    // eq_approx sweep over a small integer domain.
    {
        long n = 16;
        HeContext ctx = spec.context.make_context();
        cmp::EqConfig cfg = eq_config_for(spec, n);
        long cases = n * n;
        std::vector<Rat> xv(static_cast<std::size_t>(cases)), yv(static_cast<std::size_t>(cases));
        for (long idx = 0; idx < cases; ++idx) {
            xv[static_cast<std::size_t>(idx)] = idx / n;
            yv[static_cast<std::size_t>(idx)] = idx % n;
        }
        CipherVec x = ctx.encrypt(ctx.encode(xv));
        CostLedger before = ctx.ledger();
        CipherVec r = cmp::eq_approx(ctx, x, ctx.encode(yv), cfg);
        auto slots = ctx.decrypt(r);
        double worst = 0.0;
        for (long idx = 0; idx < cases; ++idx) {
            double expect = (idx / n) == (idx % n) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(rat_to_double(slots[static_cast<std::size_t>(idx)].re) - expect));
        }
        BenchRecord rec;
        rec.name = "eq";
        rec.n = n;
        rec.bandwidth_slots = 2;
        fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
        rec.depth = r.depth();
        rec.pt_free_depth = r.pt_free_depth();
        rec.max_abs_error = worst;
        out.push_back(std::move(rec));
    }

    // Greater-than via maps, exhaustive over [8]^2; ledger measured on one call.
    {
        long n = 8;
        HeContext ctx = spec.context.make_context();
        double worst = 0.0;
        BenchRecord rec;
        rec.name = "ge-maps";
        rec.n = n;
        rec.bandwidth_slots = 2 * n;
        bool measured = false;
        for (long a = 0; a < n; ++a) {
            auto gm = repr::greater_map_of(a, n);
            std::vector<Rat> gv(gm.bits.begin(), gm.bits.end());
            CipherVec g = ctx.encrypt(ctx.encode(gv));
            for (long b = 0; b < n; ++b) {
                auto oh = repr::one_hot_of(b, n);
                std::vector<Rat> ov(oh.bits.begin(), oh.bits.end());
                CipherVec o = ctx.encrypt(ctx.encode(ov));
                CostLedger before = ctx.ledger();
                CipherVec r = cmp::ge_via_maps(ctx, g, o);
                if (!measured) {
                    fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
                    rec.depth = r.depth();
                    rec.pt_free_depth = r.pt_free_depth();
                    measured = true;
                }
                double expect = b > a ? 1.0 : 0.0;
                worst = std::max(worst,
                                 std::abs(rat_to_double(ctx.decrypt(r)[0].re) - expect));
            }
        }
        rec.max_abs_error = worst;
        out.push_back(std::move(rec));
    }

    // Range checks, both paths, exhaustive values for n = 10.
    for (auto path : {cmp::RangePath::IntervalMask, cmp::RangePath::TwoMapTests}) {
        long n = 10;
        HeContext ctx = spec.context.make_context();
        double worst = 0.0;
        BenchRecord rec;
        rec.name = path == cmp::RangePath::IntervalMask ? "range-mask" : "range-2maps";
        rec.n = n;
        rec.bandwidth_slots = n;
        bool measured = false;
        for (long a = 0; a < n; ++a) {
            for (long b = a; b < n; ++b) {
                for (long v = 0; v < n; ++v) {
                    auto oh = repr::one_hot_of(v, n);
                    std::vector<Rat> ov(oh.bits.begin(), oh.bits.end());
                    CipherVec o = ctx.encrypt(ctx.encode(ov));
                    CostLedger before = ctx.ledger();
                    CipherVec r = cmp::range_check(ctx, o, a, b, n, path);
                    if (!measured) {
                        fill_costs(rec, ctx.ledger().delta(before), spec.weights, 1.0);
                        rec.depth = r.depth();
                        rec.pt_free_depth = r.pt_free_depth();
                        measured = true;
                    }
                    double expect = (v >= a && v <= b) ? 1.0 : 0.0;
                    worst = std::max(worst,
                                     std::abs(rat_to_double(ctx.decrypt(r)[0].re) - expect));
                }
            }
        }
        rec.max_abs_error = worst;
        out.push_back(std::move(rec));
    }
    return out;
}

// ---- dispatch / rendering ------------------------------------------------------

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult res;
    res.experiment = spec.experiment;
    if (spec.experiment == "tradeoff") {
        res.records = run_tradeoff(spec);
    } else if (spec.experiment == "num2onehot") {
        res.records = run_num2onehot(spec);
    } else if (spec.experiment == "shadow-bounds") {
        res.shadow_rows = run_shadow_bounds(spec.max_level);
    } else {
        res.records = run_comparator_suite(spec);
    }
    return res;
}

namespace {
std::string fmt_double(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}
}  // namespace

std::string records_to_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << "name,n,bandwidth_slots,ct_mults,pt_mults,rotations,conjugations,depth,"
          "simulated_cost,max_abs_error,overflowed\n";
    for (const auto& r : records) {
        os << r.name << ',' << r.n << ',' << r.bandwidth_slots << ',' << r.ct_mults << ','
           << r.pt_mults << ',' << r.rotations << ',' << r.conjugations << ',' << r.depth << ','
           << fmt_double(r.simulated_cost) << ',' << fmt_double(r.max_abs_error) << ','
           << (r.overflowed ? "true" : "false") << '\n';
    }
    return os.str();
}

json records_to_json(const std::vector<BenchRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) {
        json j{{"name", r.name},
               {"n", r.n},
               {"bandwidth_slots", r.bandwidth_slots},
               {"ct_mults", r.ct_mults},
               {"pt_mults", r.pt_mults},
               {"rotations", r.rotations},
               {"conjugations", r.conjugations},
               {"depth", r.depth},
               {"simulated_cost", r.simulated_cost},
               {"overflowed", r.overflowed},
               {"adds", r.adds},
               {"bootstraps", r.bootstraps},
               {"pt_free_depth", r.pt_free_depth}};
        if (std::isinf(r.max_abs_error)) j["max_abs_error"] = nullptr;
        else j["max_abs_error"] = r.max_abs_error;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string shadow_rows_to_csv(const std::vector<ShadowBoundsRow>& rows) {
    std::ostringstream os;
    os << "level,min_positive,max_positive,log2_min,log2_max,exact_min,exact_max\n";
    for (const auto& r : rows) {
        os << r.level << ',' << fmt_double(r.min_positive) << ',' << fmt_double(r.max_positive)
           << ',' << fmt_double(r.log2_min) << ',' << fmt_double(r.log2_max) << ','
           << rat_to_string(r.exact_min) << ',' << rat_to_string(r.exact_max) << '\n';
    }
    return os.str();
}

json shadow_rows_to_json(const std::vector<ShadowBoundsRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(json{{"level", r.level},
                           {"min_positive", r.min_positive},
                           {"max_positive", r.max_positive},
                           {"log2_min", r.log2_min},
                           {"log2_max", r.log2_max},
                           {"exact_min", rat_to_string(r.exact_min)},
                           {"exact_max", rat_to_string(r.exact_max)}});
    }
    return arr;
}

std::string render(const ExperimentResult& result, const std::string& format) {
    if (result.experiment == "shadow-bounds") {
        if (format == "csv") return shadow_rows_to_csv(result.shadow_rows);
        return shadow_rows_to_json(result.shadow_rows).dump(2) + "\n";
    }
    if (format == "csv") return records_to_csv(result.records);
    return records_to_json(result.records).dump(2) + "\n";
}

}  // namespace ohsim::bench
