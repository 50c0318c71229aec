#ifndef SIQRNG_OPTIMIZER_H
#define SIQRNG_OPTIMIZER_H

#include <vector>

#include "siqrng/acquisition.h"
#include "siqrng/certification.h"
#include "siqrng/detector_sim.h"

namespace siqrng {

/// Net certified bits per pulse for the analytic statistics of `config`.
/// Configurations without data in some basis, or with fewer Z clicks than the
/// finite-size floor, certify nothing and return 0.
double rate_objective(const ExperimentConfig& config, const EpsilonBudget& budget,
                      DoubleClickPolicy policy);

/// Evenly spaced axis start, start + step, ..., up to stop inclusive.
struct AxisGrid {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;

    std::vector<double> points() const;
};

struct SearchGrid {
    AxisGrid mu{0.05, 0.05, 5.0};
    AxisGrid q{0.005, 0.005, 0.495};
    /// Rounds of local refinement, each 10x finer around the incumbent.
    int refine_levels = 3;

    /// Throws ConfigError unless mu stays in (0, 5] and q in (0, 1/2).
    void validate() const;
};

struct TracePoint {
    double mu = 0.0;
    double q = 0.0;
    double rate = 0.0;
};

struct OptimizationResult {
    double mu_opt = 0.0;
    double q_opt = 0.0;
    double rate_opt = 0.0;
    std::vector<TracePoint> trace;

    /// False in the sub-threshold regime where no point certifies any bits.
    bool positive() const { return rate_opt > 0.0; }
};

/// Deterministic grid search over (mu, q) with eta = 1, followed by nested
/// refinement. Ties go to the smaller mu, then the smaller q.
OptimizationResult optimize(double pulses, double p, const EpsilonBudget& budget,
                            DoubleClickPolicy policy, const SearchGrid& grid = {});

/// For every mu on the grid, the rate with q optimized (coarse q axis plus
/// refinement).
std::vector<TracePoint> mu_profile(double pulses, double p, const EpsilonBudget& budget,
                                   DoubleClickPolicy policy, const SearchGrid& grid = {});

}  // namespace siqrng

#endif
