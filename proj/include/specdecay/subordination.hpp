#ifndef SPECDECAY_SUBORDINATION_HPP
#define SPECDECAY_SUBORDINATION_HPP

#include "specdecay/operators.hpp"

#include <optional>
#include <vector>

namespace specdecay {

// Finite non-increasing sequence of positive reals (synthetic inputs with
// zeros get the positivity floor before entering).
struct DecaySequence {
    std::vector<Real> values;
    std::vector<Real> error_bounds;  // optional; empty means exact

    static Real positivity_floor(unsigned bits);
    static DecaySequence from_doubles(const std::vector<double>& v, unsigned bits);
    static DecaySequence from_spectrum(const SingularSpectrum& sp, unsigned bits);
};

struct SubordinationReport {
    bool holds = true;
    std::optional<std::size_t> first_violation;  // 1-based n of the first failing prefix
    std::vector<Real> margins;                   // per-n slack (positive = inequality satisfied)
    std::size_t certified_prefix = 0;            // indices where both sequences clear 10x bounds
};

// Partial-sum comparison: sum_{j<=n} u_j <= sum_{j<=n} v_j for all n.
SubordinationReport is_subordinate(const DecaySequence& u, const DecaySequence& v);

// Partial-product comparison on the log scale.
SubordinationReport is_log_subordinate(const DecaySequence& u, const DecaySequence& v);

// Increasing convex images preserve subordination; checks the supplied
// sampled transforms (defaults: e^{px} for p in {1/4,1/2,1,2,4} and the
// hinge x -> max(x - t, 0) + t on sampled thresholds).
bool convex_image_check(const DecaySequence& u, const DecaySequence& v,
                        const std::vector<std::function<Real(const Real&)>>& transforms = {});

// The two consequences of log-subordination:
//   u_N <= v_1^(n/N) v_n^(1-n/N)  and  u_{2n} <= sqrt(v_1 v_n).
bool corollary_bounds_check(const DecaySequence& u, const DecaySequence& v);

// Diagonal conjugation of a lower-triangular matrix by an increasing positive
// sequence shrinks every partial product of singular values. Forms D^-1 A D,
// computes both spectra, checks log-subordination up to n_max, and also the
// norm inequality s_1(D^-1 A D) <= s_1(A).
struct KacnelsonReport {
    SubordinationReport subordination;
    bool norm_inequality = false;
    SingularSpectrum conjugated;
    SingularSpectrum original;
};
KacnelsonReport kacnelson_check(const ComplexMatrix& a, const std::vector<Real>& d,
                                std::size_t n_max, const PrecisionContext& ctx);

// |det <M f_j, g_i>| never exceeds s_1...s_n, and singular-vector systems
// attain it.
struct DetMaxReport {
    bool no_exceedance = true;
    bool attained = false;
    Real worst_excess_ratio = bound(0.0);  // max |det| / prod s_j over trials
    Real attainment_gap = bound(0.0);      // relative gap at singular vectors
};
DetMaxReport detmax_identity_check(const ComplexMatrix& m, std::size_t n, std::size_t trials,
                                   const PrecisionContext& ctx);

// Comparison chain across weight families: for each adjacent (dominating,
// dominated) pair the dominated spectrum must be log-subordinate to the
// dominating one. Matrices share one power table; include_index_zero = false
// compares on the f(0)=0 hyperplane instead.
struct ChainResult {
    std::vector<SubordinationReport> pairs;
    std::vector<SingularSpectrum> spectra;
    bool all_hold() const {
        for (const auto& r : pairs)
            if (!r.holds) return false;
        return true;
    }
};
ChainResult product_chain_check(const Symbol& s, const std::vector<WeightFamily>& families,
                                std::size_t n, const PrecisionContext& ctx,
                                bool include_index_zero = true, const SvdOptions& opts = {});

}  // namespace specdecay

#endif
