#include "siqrng/randomness_bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "siqrng/errors.h"

namespace siqrng {

namespace {

void check_open_probability(double eps, const char* name) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(eps));
    }
}

void check_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

// log2(2 / eps^2) = 1 - 2 log2 eps
double smoothing_log(double eps1) { return 1.0 - 2.0 * std::log2(eps1); }

}  // namespace

double smoothing_constant() { return 4.0 * std::log2(2.0 + std::sqrt(2.0)); }

std::int64_t finite_size_floor(double epsilon1) {
    check_open_probability(epsilon1, "epsilon1");
    return static_cast<std::int64_t>(std::ceil(1.6 * smoothing_log(epsilon1)));
}

double finite_size_penalty(double n_z, double epsilon1) {
    check_open_probability(epsilon1, "epsilon1");
    if (!(n_z >= 0.0)) throw DomainError("n_z must be nonnegative");
    return smoothing_constant() * std::sqrt(n_z * smoothing_log(epsilon1));
}

double min_entropy_bound(double n_z, double coherence, double epsilon1) {
    check_fraction(coherence, "coherence");
    auto floor = finite_size_floor(epsilon1);
    if (!(n_z >= static_cast<double>(floor))) {
        throw PreconditionError("finite-size bound needs n_z >= " + std::to_string(floor) +
                                ", got " + std::to_string(n_z));
    }
    return n_z * coherence - finite_size_penalty(n_z, epsilon1);
}

double witness_rate_asymptotic(double p_x, double z_fraction, double beta) {
    check_fraction(z_fraction, "z_fraction");
    check_fraction(beta, "beta");
    return z_fraction * beta * (1.0 - binary_entropy(p_x));
}

double tomo_rate_asymptotic(const QubitTomogram& t, double z_fraction, double beta) {
    check_fraction(z_fraction, "z_fraction");
    check_fraction(beta, "beta");
    return z_fraction * beta * coherence_rel_entropy(t);
}

RateReport make_rate_report(double n_z, double coherence, double entropy_bound, double penalty,
                            double double_click_cost, double pulses) {
    if (!(pulses > 0.0)) throw DomainError("pulse count must be positive");
    RateReport r;
    r.n_z = n_z;
    r.raw_bits = n_z;
    r.coherence = coherence;
    r.entropy_bound = entropy_bound;
    r.finite_size_penalty = penalty;
    r.double_click_cost = double_click_cost;
    r.net_bits = std::max(0.0, r.unclamped_net_bits());
    r.pulses = pulses;
    r.rate_per_pulse = r.net_bits / pulses;
    return r;
}

RateReport assemble_rate_report(double n_z, double coherence, double epsilon1,
                                double double_click_cost, double pulses) {
    // Validates the finite-size regime.
    (void)min_entropy_bound(n_z, coherence, epsilon1);
    return make_rate_report(n_z, coherence, n_z * coherence, finite_size_penalty(n_z, epsilon1),
                            double_click_cost, pulses);
}

}  // namespace siqrng
