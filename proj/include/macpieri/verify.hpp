#pragma once

// Verification harness: every algebraic identity the library implements,
// re-checked over enumerated ranges of compositions, either symbolically in
// Q(q,t) or at random rational sample points. Case enumeration, execution
// and reporting are deterministic for a fixed (options, seed) pair, so two
// identical invocations produce byte-identical reports regardless of the
// worker count.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace macpieri {

// Canonical suite order; reports always follow it.
const std::vector<std::string>& all_verify_suites();

struct VerifyOptions {
    std::vector<std::string> suites;  // empty = all suites
    std::vector<int> ns;              // variable counts; empty = {1, 2, 3}
    int max_modulus = -1;             // -1 = per-n default (4 for n <= 2, 3 for n = 3+)
    bool sampled = false;             // false = symbolic in Q(q,t)
    unsigned long long seed = 1;      // sample-point seed (sampled mode only)
    int jobs = 1;                     // worker threads
    std::string cache_dir;            // empty = no disk cache
    bool lprime_minus = false;        // deliberately wrong leg-colength convention
};

// nullopt when the options are usable; otherwise a usage-error message.
std::optional<std::string> validate_verify_options(const VerifyOptions& opt);

struct VerifyResult {
    std::string suite;
    std::string descriptor;
    bool pass = false;
    bool infrastructure = false;  // could not be decided (e.g. resample cap)
    std::string detail;           // failure: both sides; sampled pass: points used
};

struct VerifySummary {
    std::vector<VerifyResult> results;  // canonical order
    int passed = 0;
    int failed = 0;
    int infrastructure = 0;

    int exit_code() const {
        if (failed > 0) return 1;
        if (infrastructure > 0) return 3;
        return 0;
    }
};

VerifySummary run_verify(const VerifyOptions& opt);

std::string verify_report_text(const VerifyOptions& opt, const VerifySummary& s);
nlohmann::ordered_json verify_report_json(const VerifyOptions& opt, const VerifySummary& s);

}  // namespace macpieri
