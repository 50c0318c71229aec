#include "siqrng/acquisition.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "siqrng/errors.h"
#include "siqrng/qubit_core.h"

namespace siqrng {

namespace {

// Slack for rounding in p_a; well below any physical resolution of counts.
constexpr double kAssignmentSlack = 1e-12;

}  // namespace

std::string_view basis_name(Basis b) {
    switch (b) {
        case Basis::X:
            return "X";
        case Basis::Y:
            return "Y";
        case Basis::Z:
            return "Z";
    }
    return "?";
}

bool BasisCounts::valid() const {
    auto ok = [](double c) { return c >= 0.0 && std::isfinite(c); };
    return ok(n0) && ok(n1) && ok(nd);
}

double ClickRecord::total_clicks() const {
    double t = 0.0;
    for (const auto& b : bases) t += b.total();
    return t;
}

double EpsilonBudget::for_basis(Basis b) const {
    switch (b) {
        case Basis::X:
            return eps_x;
        case Basis::Y:
            return eps_y;
        case Basis::Z:
            return eps_z;
    }
    return eps_z;
}

ProbabilityInterval squash_bounds(const BasisCounts& counts, Basis basis) {
    if (!counts.valid()) {
        throw DomainError("negative or non-finite counts in basis " +
                          std::string(basis_name(basis)));
    }
    double n = counts.total();
    if (!(n > 0.0)) throw NoDataError("no data in basis " + std::string(basis_name(basis)));
    return {counts.n0 / n, (counts.n0 + counts.nd) / n};
}

ProbabilityBounds squash_bounds(const ClickRecord& record) {
    ProbabilityBounds b;
    for (Basis j : kAllBases) b[j] = squash_bounds(record[j], j);
    return b;
}

WorstCase worst_case_prob(const ProbabilityInterval& interval) {
    WorstCase w;
    ProbabilityInterval iv = interval;
    if (iv.upper < 0.5) {
        iv = iv.flipped();
        w.flipped = true;
    }
    w.p_w = std::max(iv.lower, 0.5);
    return w;
}

WorstCase worst_case_prob(const ProbabilityBounds& bounds, Basis basis) {
    return worst_case_prob(bounds[basis]);
}

double hoeffding_theta(double n, double eps) {
    if (!(n >= 1.0)) throw DomainError("hoeffding_theta: n must be at least 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("hoeffding_theta: eps must lie in (0, 1)");
    return std::sqrt(-std::log(eps) / (2.0 * n));
}

double fluctuation_adjust(double p_w, double theta) { return std::max(p_w - theta, 0.5); }

double assignment_prob(double p_w_z, const ZBasisCounts& z) {
    const auto& c = z.counts();
    double n = c.total();
    double excess = p_w_z * n - c.n0;
    if (c.nd == 0.0) {
        if (std::abs(excess) > kAssignmentSlack * std::max(n, 1.0)) {
            throw IncompatibleCountsError(
                "no double clicks to assign but p_w_z differs from the single-click ratio");
        }
        return 0.0;
    }
    // The slack is relative to n: p_w_z * n carries rounding of that size
    // even when the single-click counts match it exactly.
    const double slack = kAssignmentSlack * std::max(n, 1.0);
    double p_a = excess / c.nd;
    if (excess < -slack || excess > c.nd + slack || !std::isfinite(p_a)) {
        throw IncompatibleCountsError("assignment probability " + std::to_string(p_a) +
                                      " is outside [0, 1]");
    }
    return std::clamp(p_a, 0.0, 1.0);
}

double double_click_cost_assignment(const ZBasisCounts& z, double p_a) {
    return z.counts().nd * binary_entropy(p_a);
}

DiscardCost double_click_cost_discard(const ZBasisCounts& z) {
    const auto& c = z.counts();
    return {c.nd, c.total() - c.nd};
}

double total_epsilon(const EpsilonBudget& budget) {
    const std::array<std::pair<const char*, double>, 5> parts = {{{"eps1", budget.eps1},
                                                                  {"eps2", budget.eps2},
                                                                  {"eps_x", budget.eps_x},
                                                                  {"eps_y", budget.eps_y},
                                                                  {"eps_z", budget.eps_z}}};
    double sum = 0.0;
    for (const auto& [name, v] : parts) {
        if (!(v > 0.0 && v < 1.0)) {
            throw ConfigError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
        }
        sum += v;
    }
    if (!(sum < 1.0)) {
        throw ConfigError("total failure probability " + std::to_string(sum) + " is not below 1");
    }
    return sum;
}

}  // namespace siqrng
