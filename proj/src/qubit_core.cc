#include "siqrng/qubit_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "siqrng/errors.h"

namespace siqrng {

namespace {

void check_distribution(std::span<const double> distribution) {
    if (distribution.size() < 2) {
        throw DomainError("witness distribution needs at least two outcomes");
    }
    double sum = 0.0;
    for (double p : distribution) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw DomainError("distribution entry " + std::to_string(p) + " is not a probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol) {
        throw DomainError("distribution sums to " + std::to_string(sum) + ", not 1");
    }
}

// -p log2 p with the continuity convention at 0.
double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

QubitTomogram QubitTomogram::from_bloch(double x, double y, double z) {
    return {(1.0 + x) / 2.0, (1.0 + y) / 2.0, (1.0 + z) / 2.0};
}

std::array<double, 3> QubitTomogram::bloch_vector() const {
    return {2.0 * p_x - 1.0, 2.0 * p_y - 1.0, 2.0 * p_z - 1.0};
}

bool QubitTomogram::in_range() const {
    auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    return ok(p_x) && ok(p_y) && ok(p_z);
}

bool QubitTomogram::is_physical(double tol) const {
    auto r = bloch_vector();
    return in_range() && r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0 + tol;
}

// (2p-1)^2 summed over bases equals 4(sum p^2 - sum p) + 3 and avoids the
// cancellation of the expanded form near pure states.
PurityRadius::PurityRadius(const QubitTomogram& t) {
    auto r = t.bloch_vector();
    value_ = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

double PurityRadius::checked(double tol) const {
    if (!(value_ <= 1.0 + tol)) {
        throw DomainError("nonphysical tomogram: purity radius " + std::to_string(value_) +
                          " exceeds 1");
    }
    return std::min(value_, 1.0);
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binary_entropy: " + std::to_string(p) + " is outside [0, 1]");
    }
    return entropy_term(p) + entropy_term(1.0 - p);
}

double shannon_entropy(std::span<const double> distribution) {
    check_distribution(distribution);
    double h = 0.0;
    for (double p : distribution) h += entropy_term(p);
    return h;
}

double von_neumann_entropy(const QubitTomogram& t) {
    if (!t.in_range()) throw DomainError("tomogram probabilities must lie in [0, 1]");
    double radius = PurityRadius(t).checked();
    return binary_entropy((1.0 + radius) / 2.0);
}

double coherence_rel_entropy(const QubitTomogram& t) {
    double c = binary_entropy(t.p_z) - von_neumann_entropy(t);
    // Rounding can leave incoherent states a few ulps below zero.
    return std::max(c, 0.0);
}

double witness_value(std::span<const double> distribution) {
    double h = shannon_entropy(distribution);
    return std::min(h - std::log2(static_cast<double>(distribution.size())), 0.0);
}

double witness_coherence_bound(std::span<const double> distribution, std::size_t dimension) {
    if (dimension != distribution.size()) {
        throw DomainError("witness dimension " + std::to_string(dimension) +
                          " does not match distribution size " +
                          std::to_string(distribution.size()));
    }
    return -witness_value(distribution);
}

}  // namespace siqrng
