#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace galcoh {

/// Expected value and citation for one named check.
struct Expectation {
    std::string id;
    std::vector<std::string> tags;
    std::string anchor;
    std::string expected;
};

/// Reads {"checks": [{"id", "tags", "anchor", "expected"}, ...]}. Every
/// built-in check must appear exactly once; anything else is an InputError.
std::vector<Expectation> load_expectations(const std::string& path);

/// Path of the expectations file shipped with the sources.
std::string default_expectations_path();

struct CheckResult {
    std::string id;
    std::vector<std::string> tags;
    std::string anchor;
    bool passed = false;
    std::string computed;
    std::string expected;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Ids of the built-in checks, in report order.
std::vector<std::string> verification_check_ids();

/// Runs every check whose id or one of whose tags equals `filter` (all
/// checks when the filter is empty). Order follows verification_check_ids().
VerificationReport run_verification(const std::vector<Expectation>& expectations, const std::string& filter = {},
                                    std::uint64_t seed = 20240611);

/// Machine-readable report; elapsed times only with `timings`.
std::string report_json(const VerificationReport& r, bool timings = false);
std::string report_human(const VerificationReport& r, bool timings = false);

} // namespace galcoh
