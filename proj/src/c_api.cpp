// SPDX-License-Identifier: Apache-2.0
#include "ohsim/ohsim.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ohsim/bench.hpp"
#include "ohsim/config.hpp"
#include "ohsim/shadow_tree.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
ohsim_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return OHSIM_OK;
    } catch (const ohsim::OverflowError& e) {
        g_last_error = e.what();
        return OHSIM_ERR_OVERFLOW;
    } catch (const ohsim::DepthBudgetError& e) {
        g_last_error = e.what();
        return OHSIM_ERR_DEPTH_BUDGET;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return OHSIM_ERR_BAD_CONFIG;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return OHSIM_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return OHSIM_ERR_INTERNAL;
    }
}

}  // namespace

struct ohsim_context {
    ohsim::HeContext impl;
};

extern "C" {

unsigned ohsim_version(void) { return 10000; }

const char* ohsim_last_error(void) { return g_last_error.c_str(); }

void ohsim_string_free(char* s) { std::free(s); }

ohsim_status ohsim_context_create(const char* config_json, ohsim_context** out) {
    if (!config_json || !out) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        auto cfg = ohsim::ContextConfig::from_json(nlohmann::json::parse(config_json));
        *out = new ohsim_context{cfg.make_context()};
    });
}

void ohsim_context_free(ohsim_context* ctx) { delete ctx; }

ohsim_status ohsim_context_ledger(const ohsim_context* ctx, char** out_json) {
    if (!ctx || !out_json) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out_json = dup_string(ctx->impl.ledger().to_json()); });
}

ohsim_status ohsim_context_reset_ledger(ohsim_context* ctx) {
    if (!ctx) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    ctx->impl.reset_ledger();
    return OHSIM_OK;
}

ohsim_status ohsim_run_experiment(const char* spec_json, char** out_text) {
    if (!spec_json || !out_text) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        auto spec = ohsim::bench::ExperimentSpec::from_json(nlohmann::json::parse(spec_json));
        auto result = ohsim::bench::run_experiment(spec);
        *out_text = dup_string(ohsim::bench::render(result, spec.format));
    });
}

ohsim_status ohsim_find_crt_basis(long n, const char* strategy, long t, char** out_json) {
    if (!strategy || !out_json) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        std::string s(strategy);
        ohsim::repr::BasisStrategy st;
        if (s == "primes" || s == "prime-combination") st = ohsim::repr::BasisStrategy::PrimeCombination;
        else if (s == "scan" || s == "scan-range") st = ohsim::repr::BasisStrategy::ScanRange;
        else throw std::invalid_argument("strategy must be 'primes' or 'scan'");
        auto res = ohsim::repr::find_crt_basis(n, st, t);
        nlohmann::json j = ohsim::repr::to_json(res.basis);
        j["warning"] = res.warning;
        *out_json = dup_string(j.dump());
    });
}

ohsim_status ohsim_shadow_tree(long leaves, char** out_json) {
    if (!out_json) {
        g_last_error = "null argument";
        return OHSIM_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        auto t = ohsim::conv::ShadowTree::build(leaves);
        *out_json = dup_string(t.to_json().dump());
    });
}

}  // extern "C"
