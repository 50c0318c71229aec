#ifndef SIQRNG_CERTIFICATION_H
#define SIQRNG_CERTIFICATION_H

#include <array>
#include <optional>
#include <string_view>

#include "siqrng/acquisition.h"
#include "siqrng/qubit_core.h"
#include "siqrng/randomness_bounds.h"

namespace siqrng {

/// Treatment of Z-basis double clicks.
enum class DoubleClickPolicy { assignment, discard };

std::string_view policy_name(DoubleClickPolicy policy);
/// Accepts "assign", "assignment" and "discard".
std::optional<DoubleClickPolicy> parse_policy(std::string_view name);

/// Every intermediate of a certification run, for reporting.
struct CertificationResult {
    ProbabilityBounds bounds;
    std::array<double, 3> theta{};
    std::array<WorstCase, 3> worst{};
    std::array<double, 3> p_bar{};
    QubitTomogram tomogram;
    DoubleClickPolicy requested = DoubleClickPolicy::discard;
    DoubleClickPolicy applied = DoubleClickPolicy::discard;
    /// Set when the assignment policy ran.
    std::optional<double> assignment_probability;
    /// Assignment was requested but the counts were incompatible with it.
    bool fell_back_to_discard = false;
    RateReport report;
};

/// Turns click counts into certified net random bits: squashing bounds,
/// worst-case probabilities, per-basis Hoeffding deduction, coherence of the
/// worst-case tomogram, finite-size bound and the double-click cost. Errors
/// are rethrown as StageError naming the failing stage.
CertificationResult certify(const ClickRecord& record, const EpsilonBudget& budget,
                            DoubleClickPolicy policy, double pulses);

}  // namespace siqrng

#endif
