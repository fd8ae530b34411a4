#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatspec/boundary_ops.hpp"

namespace heatspec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    int m_lo = 2;
    int m_hi = 8;
    std::uint64_t seed = kDefaultSeed;
    double lambda_max = 4e4;
};

/// The acceptance criteria, one check each, in order.
CheckResult criterion_trace_tables(const VerifyOptions& opt);          // 1
CheckResult criterion_coefficient_matrices(const VerifyOptions& opt);  // 2
CheckResult criterion_a3_decomposition(const VerifyOptions& opt);  // 3
CheckResult criterion_disk_fit(const VerifyOptions& opt);              // 4
CheckResult criterion_hemisphere(const VerifyOptions& opt);            // 5
CheckResult criterion_one_form_crosscheck(const VerifyOptions& opt);   // 6
CheckResult criterion_exact_round_trip(const VerifyOptions& opt);      // 7
CheckResult criterion_umbillic_oracle(const VerifyOptions& opt);       // 8
CheckResult criterion_hypothesis_gating(const VerifyOptions& opt);     // 9

/// Named suites exposed by the CLI: traces, matrices, heat-fit, classify,
/// or all (the full acceptance list).
SuiteResult run_suite(const std::string& suite, const VerifyOptions& opt);

std::vector<CheckResult> run_acceptance(const VerifyOptions& opt);

}  // namespace heatspec
