#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmv/decoupling.hpp"
#include "cmv/ensemble.hpp"
#include "cmv/io.hpp"

namespace cmv {

struct Tolerances {
    double rank = kRankTol;
    // When positive, replaces the default tolerance of every identity-type check.
    double identity = 0.0;
};

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<std::string> suites;
    EnsembleSpec spec;
    std::vector<CheckResult> checks;  // sorted by (suite, name)
    double runtime_seconds = 0;
    bool passed() const;
};

const std::vector<std::string>& suite_names();

// Runs the named invariant suites on the ensemble `spec`, `jobs` suites at a time.
// Every suite draws its own randomness from the seed, so results do not depend on `jobs`.
VerificationReport run_suite(const std::vector<std::string>& names, const EnsembleSpec& spec,
                             const Tolerances& tol = {}, int jobs = 1);

// Runtime is left out unless requested, keeping reports byte-identical across runs.
json report_to_json(const VerificationReport& r, bool with_runtime = false);
std::string report_to_csv(const VerificationReport& r);

}  // namespace cmv
