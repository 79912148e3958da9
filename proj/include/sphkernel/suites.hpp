#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sph {

// One failed case of a verification suite. The origin of the expected value
// is recorded as "golden" (a frozen worked value), "recomputed" (an
// independent symbolic route), or "oracle" (a brute-force lattice count).
struct SuiteFailure {
    std::string input;
    std::string expected;
    std::string actual;
    std::string expected_from;
};

struct SuiteParams {
    int rank_max = 0;  // 0 selects the per-suite default
    std::vector<long long> primes = {3};
    std::uint64_t seed = 1;
};

// Outcome of one named suite: what was checked, with which parameters, how
// many cases ran, and every failure in canonical case order. Timing is
// deliberately not part of the report so that identical seeds and
// parameters render byte-identical JSON.
struct SuiteReport {
    std::string suite;
    std::string statement;
    std::string params;
    long long cases = 0;
    std::vector<SuiteFailure> failures;
    bool passed() const { return failures.empty(); }
};

// The nine runnable suite names, in canonical order ("all" is not listed).
const std::vector<std::string>& suite_names();

// Runs one suite; InvalidSpecError for a name outside suite_names().
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

// Runs every suite in canonical order.
std::vector<SuiteReport> run_all(const SuiteParams& params);

// Canonical JSON rendering of reports (schema "sphkernel-report/1").
std::string reports_json(const std::vector<SuiteReport>& reports);

}  // namespace sph
