// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner CLI. Links only the shared C API.
//
//   ohsim tradeoff      --n 100,10000 --profile fixed:42:18 --out tradeoff.csv
//   ohsim num2onehot    --n 4,8,16,32 --profile fixed:42:16 --format json
//   ohsim shadow-bounds --max-level 8
//   ohsim comparators   --n 2,3,4
//
// A --config JSON document provides defaults; command-line flags override it.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ohsim/ohsim.h"

namespace {

using nlohmann::json;

struct CliOptions {
    std::string config_path;
    std::vector<long> n_values;
    std::string shape;
    std::string profile;
    std::string out_path;
    std::string format;
    std::string representations;
    long batch = 0;
    int max_level = 0;
    int sharpen_iters = 0;
    int zt_iters = 0;
    long slots = 0;
    long depth_budget = -1;
    unsigned long long seed = 0;
    bool seed_set = false;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

json build_spec(const std::string& experiment, const CliOptions& opt) {
    json spec = opt.config_path.empty() ? json::object() : load_config(opt.config_path);
    spec["experiment"] = experiment;
    if (!opt.n_values.empty()) spec["n"] = opt.n_values;
    if (!opt.shape.empty()) spec["shape"] = opt.shape;
    if (!opt.out_path.empty()) spec["out"] = opt.out_path;
    if (!opt.format.empty()) spec["format"] = opt.format;
    if (opt.batch > 0) spec["batch"] = opt.batch;
    if (opt.max_level > 0) spec["max_level"] = opt.max_level;
    if (opt.sharpen_iters > 0) spec["sharpen_iters"] = opt.sharpen_iters;
    if (opt.zt_iters > 0) spec["zt_iters"] = opt.zt_iters;
    if (!spec.contains("context")) spec["context"] = json::object();
    if (!opt.profile.empty()) spec["context"]["profile"] = opt.profile;
    if (opt.slots > 0) spec["context"]["slot_count"] = opt.slots;
    if (opt.depth_budget >= 0) spec["context"]["depth_budget"] = opt.depth_budget;
    if (opt.seed_set) spec["context"]["seed"] = opt.seed;
    if (!opt.representations.empty()) {
        json reps = json::array();
        std::stringstream ss(opt.representations);
        std::string item;
        while (std::getline(ss, item, ',')) reps.push_back(item);
        spec["representations"] = reps;
    }
    return spec;
}

int run(const std::string& experiment, const CliOptions& opt) {
    json spec = build_spec(experiment, opt);
    char* text = nullptr;
    ohsim_status st = ohsim_run_experiment(spec.dump().c_str(), &text);
    if (st != OHSIM_OK) {
        std::cerr << "error: " << ohsim_last_error() << "\n";
        return st;
    }
    std::string out_path = spec.value("out", std::string{});
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            ohsim_string_free(text);
            return 1;
        }
        out << text;
        std::cout << "wrote " << out_path << "\n";
    }
    ohsim_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-model simulator for encrypted one-hot map generation"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string experiment;
    for (const auto& name : {"tradeoff", "num2onehot", "shadow-bounds", "comparators"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "JSON config with defaults for the spec");
        sub->add_option("--n", opt.n_values, "n values (comma separated)")->delimiter(',');
        sub->add_option("--shape", opt.shape, "tile shape string, e.g. \"[n/1,m/s]\"");
        sub->add_option("--profile", opt.profile, "exact | fixed:<frac>:<int> | noisy:<sigma>");
        sub->add_option("--out", opt.out_path, "output path (stdout when omitted)");
        sub->add_option("--format", opt.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--representations", opt.representations,
                        "comma list: numeric,binary,hier-crt,crt,one-hot,numeric-hier-crt");
        sub->add_option("--batch", opt.batch, "samples per tradeoff cell");
        sub->add_option("--max-level", opt.max_level, "largest shadow-bounds level (<= 8)");
        sub->add_option("--sharpen-iters", opt.sharpen_iters, "Eq sharpening rounds (0 = auto)");
        sub->add_option("--zt-iters", opt.zt_iters, "zero-test squarings (0 = auto)");
        sub->add_option("--slots", opt.slots, "context slot count (power of two)");
        sub->add_option("--depth-budget", opt.depth_budget, "depth budget (-1 = unlimited)");
        sub->add_option("--seed", opt.seed, "rng seed")->each([&](const std::string&) {
            opt.seed_set = true;
        });
        sub->callback([&, name] { experiment = name; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return run(experiment, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
