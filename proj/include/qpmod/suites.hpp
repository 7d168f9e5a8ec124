#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpmod/gl_module.hpp"
#include "qpmod/tensor_qp.hpp"

namespace qpmod {

struct SuiteConfig {
    int m = 1;
    int n = 1;
    int deg = 3;
    int samples = 200;
    std::uint64_t seed = 1;
    std::vector<std::string> suites;       // empty or {"all"} selects everything
    std::optional<GlModule> omega;         // natural module when absent
    std::optional<MuVector> mu;
    std::string module_path;               // echoed in the summary only
};

struct CheckResult {
    std::string suite;
    std::string name;
    long cases = 0;
    long failures = 0;
    std::string counterexample;  // first failing case
    bool ok() const { return failures == 0; }
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<CheckResult> checks;
    bool ok() const;
    std::string json() const;   // byte-stable for a fixed config
    std::string human() const;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& s);

// used when neither --mu nor a config supplies mu: real, with mu(i) = (i+1)/2 on even slots
MuVector default_mu(int m, int n);

SuiteReport run_suites(const SuiteConfig& cfg);

}  // namespace qpmod
