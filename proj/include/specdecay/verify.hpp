#ifndef SPECDECAY_VERIFY_HPP
#define SPECDECAY_VERIFY_HPP

#include "specdecay/precision.hpp"

#include <string>
#include <vector>

namespace specdecay {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Module invariant suites at desk-scale presets. Each check is independent;
// a throw inside a check is caught and reported as a failure.
std::vector<CheckResult> verify_numerics(const PrecisionContext& ctx);
std::vector<CheckResult> verify_series(const PrecisionContext& ctx);
std::vector<CheckResult> verify_spaces(const PrecisionContext& ctx);
std::vector<CheckResult> verify_symbols(const PrecisionContext& ctx);
std::vector<CheckResult> verify_operators(const PrecisionContext& ctx);
std::vector<CheckResult> verify_subordination(const PrecisionContext& ctx);
std::vector<CheckResult> verify_geometry(const PrecisionContext& ctx);

std::vector<CheckResult> verify_suite(const std::string& name, const PrecisionContext& ctx);

}  // namespace specdecay

#endif
