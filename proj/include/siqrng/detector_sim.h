#ifndef SIQRNG_DETECTOR_SIM_H
#define SIQRNG_DETECTOR_SIM_H

#include <array>
#include <cstdint>

#include "siqrng/acquisition.h"

namespace siqrng {

/// Coherent-state pulses carrying p I/2 + (1-p)|+><+| read out by a basis
/// rotator, a polarizing beam splitter and two threshold detectors.
struct ExperimentConfig {
    double pulses = 1e10;  ///< N; may be non-integral for rate studies
    double q = 0.05;       ///< probability of X, and of Y; Z gets 1 - 2q
    double mu0 = 1.0;      ///< source intensity
    double eta = 1.0;      ///< total transmittance
    double p = 0.0;        ///< depolarization

    /// Detected intensity eta mu0; the only combination the statistics see.
    double mu() const { return eta * mu0; }
    double basis_probability(Basis b) const { return b == Basis::Z ? 1.0 - 2.0 * q : q; }
    /// Throws ConfigError on N < 1, q outside (0, 1/2), mu0 <= 0, eta or p
    /// outside [0, 1].
    void validate() const;
};

/// Click statistics per basis, either expected values or sampled counts.
struct ClickStatistics {
    ClickRecord clicks;
    std::array<double, 3> basis_pulses{};  ///< pulses measured in each basis
    std::array<double, 3> no_clicks{};     ///< pulses with neither detector firing

    double pulses_in(Basis b) const { return basis_pulses[index(b)]; }
    double no_clicks_in(Basis b) const { return no_clicks[index(b)]; }
};

/// Closed-form expected counts, obtained by summing the Poisson photon-number
/// series analytically.
ClickStatistics analytic_click_stats(const ExperimentConfig& config);

/// Double-click probability for an m-photon pulse. In X only the mixed
/// component splits photons, so the expression carries a factor p; in Y and Z
/// every pulse does.
double double_click_prob(std::uint64_t photons, double eta, Basis basis, double p);

/// Pulse-by-pulse Monte Carlo of the same model. The pulses are split into
/// `partitions` contiguous blocks sampled concurrently, each from its own
/// generator seeded by (seed, block index); the result is a deterministic
/// function of (config, seed, partitions).
ClickStatistics mc_sample(const ExperimentConfig& config, std::uint64_t seed,
                          unsigned partitions = 1);

/// Worst-case probabilities derived from simulated statistics.
struct SimulatedEstimates {
    ClickStatistics stats;
    ProbabilityBounds bounds;
    /// lower - theta per basis without relabelling or flooring; for Y and Z
    /// this falls below 1/2 at every intensity.
    std::array<double, 3> raw_lower{};
    std::array<double, 3> theta{};
    std::array<WorstCase, 3> worst{};
    /// max(p_w - theta, 1/2) after the relabelling convention.
    std::array<double, 3> p_bar{};

    double p_bar_in(Basis b) const { return p_bar[index(b)]; }
};

/// Runs the squashing bounds, worst-case selection and fluctuation deduction
/// on the given statistics with explicit per-basis deviations.
SimulatedEstimates worst_probs_from_stats(const ClickStatistics& stats,
                                          const std::array<double, 3>& theta);

/// Analytic statistics with per-basis Hoeffding deviations from the budget.
SimulatedEstimates simulated_worst_probs(const ExperimentConfig& config,
                                         const EpsilonBudget& budget);

}  // namespace siqrng

#endif
