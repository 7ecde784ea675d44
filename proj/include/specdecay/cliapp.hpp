#ifndef SPECDECAY_CLIAPP_HPP
#define SPECDECAY_CLIAPP_HPP

#include "specdecay/operators.hpp"

#include <string>
#include <vector>

namespace specdecay {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 2 usage, 3 certificate/verification failure, 4 numeric
// failure (SVD non-convergence).
int run_cli(int argc, const char* const* argv);

// Spec-string parsing, exposed for tests.
// Symbols: cusp | lens:T | auto:A | halfplane-auto | scale:R | monomial:M |
//          st-log:EPS | st-pow:P,S,EPS | blaschke:Z1,Z2,...
Symbol parse_symbol(const std::string& spec, const PrecisionContext& ctx);
// Spaces: hardy | bergman:G | dirichlet:A | expsqrt
WeightFamily parse_family(const std::string& spec);
Cplx parse_complex(const std::string& text, mpfr_prec_t prec);

// Deterministic spectrum serialization: columns n, a_n, err_bound, certified.
std::string spectrum_csv(const SingularSpectrum& sp, int digits);
std::string spectrum_json(const SingularSpectrum& sp, int digits,
                          const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace specdecay

#endif
