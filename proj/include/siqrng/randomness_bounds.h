#ifndef SIQRNG_RANDOMNESS_BOUNDS_H
#define SIQRNG_RANDOMNESS_BOUNDS_H

#include <cstdint>

#include "siqrng/qubit_core.h"

namespace siqrng {

/// Smoothing constant k = 4 log2(2 + sqrt 2) of the finite-size penalty,
/// at full double precision.
double smoothing_constant();
/// The two-decimal rounding of the smoothing constant that is usually quoted.
inline constexpr double kSmoothingConstantRounded = 7.09;

/// Smallest n_z with n_z >= (8/5) log2(2 / eps1^2); below it the finite-size
/// bound does not hold at all.
std::int64_t finite_size_floor(double epsilon1);

/// k sqrt(n_z log2(2 / eps1^2)).
double finite_size_penalty(double n_z, double epsilon1);

/// Certified smooth min-entropy of n_z raw bits from a source with the given
/// coherence: n_z C - k sqrt(n_z log2(2 / eps1^2)). Negative values are
/// returned as is. Throws PreconditionError when n_z is below
/// finite_size_floor(eps1).
double min_entropy_bound(double n_z, double coherence, double epsilon1);

/// Asymptotic witness-protocol rate q beta (1 - H(p_x)), where z_fraction is
/// the share of detected qubits measured in Z.
double witness_rate_asymptotic(double p_x, double z_fraction, double beta);

/// Asymptotic tomography-protocol rate q_z beta C(rho).
double tomo_rate_asymptotic(const QubitTomogram& t, double z_fraction, double beta);

/// Itemized randomness accounting for one run.
struct RateReport {
    double n_z = 0.0;        ///< Z-basis clicks entering the entropy bound
    double raw_bits = 0.0;   ///< raw bits handed to the extractor
    double coherence = 0.0;
    double entropy_bound = 0.0;
    double finite_size_penalty = 0.0;
    double double_click_cost = 0.0;
    double net_bits = 0.0;   ///< max(0, entropy_bound - penalty - cost)
    double pulses = 0.0;
    double rate_per_pulse = 0.0;

    /// Signed value before flooring; negative means no net randomness.
    double unclamped_net_bits() const {
        return entropy_bound - finite_size_penalty - double_click_cost;
    }
    bool positive() const { return net_bits > 0.0; }
};

/// Fills a report from already evaluated terms. raw_bits defaults to n_z.
RateReport make_rate_report(double n_z, double coherence, double entropy_bound,
                            double penalty, double double_click_cost, double pulses);

/// Evaluates the finite-size bound and assembles the report.
RateReport assemble_rate_report(double n_z, double coherence, double epsilon1,
                                double double_click_cost, double pulses);

}  // namespace siqrng

#endif
