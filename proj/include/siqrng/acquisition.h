#ifndef SIQRNG_ACQUISITION_H
#define SIQRNG_ACQUISITION_H

#include <array>
#include <cstddef>
#include <string_view>

namespace siqrng {

enum class Basis { X = 0, Y = 1, Z = 2 };
inline constexpr std::array<Basis, 3> kAllBases = {Basis::X, Basis::Y, Basis::Z};

std::string_view basis_name(Basis b);
constexpr std::size_t index(Basis b) { return static_cast<std::size_t>(b); }

/// Threshold-detector outcomes in one basis. Counts are stored as doubles so
/// that expected counts from the analytic model share the type; measured
/// counts are whole numbers.
struct BasisCounts {
    double n0 = 0.0;  ///< single clicks of the first detector
    double n1 = 0.0;  ///< single clicks of the second detector
    double nd = 0.0;  ///< double clicks

    double total() const { return n0 + n1 + nd; }
    /// Outcome labels exchanged.
    BasisCounts flipped() const { return {n1, n0, nd}; }
    bool valid() const;
};

/// Z-basis counts. Only this type feeds the double-click postprocessing;
/// X and Y doubles are used for tomography only.
class ZBasisCounts {
   public:
    explicit ZBasisCounts(const BasisCounts& c) : counts_(c) {}
    const BasisCounts& counts() const { return counts_; }
    ZBasisCounts flipped() const { return ZBasisCounts(counts_.flipped()); }

   private:
    BasisCounts counts_;
};

struct ClickRecord {
    std::array<BasisCounts, 3> bases{};

    BasisCounts& operator[](Basis b) { return bases[index(b)]; }
    const BasisCounts& operator[](Basis b) const { return bases[index(b)]; }
    ZBasisCounts z() const { return ZBasisCounts(bases[index(Basis::Z)]); }
    double total_clicks() const;
};

/// Squashing-model interval [lower, upper] for a first-outcome probability.
struct ProbabilityInterval {
    double lower = 0.0;
    double upper = 1.0;

    /// Interval of the relabelled outcome, [1 - upper, 1 - lower].
    ProbabilityInterval flipped() const { return {1.0 - upper, 1.0 - lower}; }
    double width() const { return upper - lower; }
};

struct ProbabilityBounds {
    std::array<ProbabilityInterval, 3> bases{};

    ProbabilityInterval& operator[](Basis b) { return bases[index(b)]; }
    const ProbabilityInterval& operator[](Basis b) const { return bases[index(b)]; }
};

/// Failure probabilities of smoothing (eps1), extraction (eps2) and the
/// three per-basis Hoeffding estimates.
struct EpsilonBudget {
    double eps1 = 1e-10;
    double eps2 = 1e-10;
    double eps_x = 1e-10;
    double eps_y = 1e-10;
    double eps_z = 1e-10;

    static EpsilonBudget uniform(double eps) { return {eps, eps, eps, eps, eps}; }
    double for_basis(Basis b) const;
};

/// n0 / n <= p <= (n0 + nd) / n. Throws NoDataError when n = 0.
ProbabilityInterval squash_bounds(const BasisCounts& counts, Basis basis);
ProbabilityBounds squash_bounds(const ClickRecord& record);

struct WorstCase {
    double p_w = 0.5;
    bool flipped = false;
};

/// Least coherent probability in the interval, max(lower, 1/2), after
/// relabelling the outcomes when the whole interval lies below 1/2.
WorstCase worst_case_prob(const ProbabilityInterval& interval);
WorstCase worst_case_prob(const ProbabilityBounds& bounds, Basis basis);

/// Deviation theta with exp(-2 theta^2 n) = eps.
double hoeffding_theta(double n, double eps);

/// max(p_w - theta, 1/2).
double fluctuation_adjust(double p_w, double theta);

/// Probability p_a of assigning outcome 0 to a double click such that the
/// assigned data reproduce p_w_z: (p_w_z n - n0) / nd. Throws
/// IncompatibleCountsError when no p_a in [0, 1] does.
double assignment_prob(double p_w_z, const ZBasisCounts& z);

/// Randomness consumed by the random assignment: nd H(p_a).
double double_click_cost_assignment(const ZBasisCounts& z, double p_a);

struct DiscardCost {
    double cost = 0.0;          ///< nd bits
    double n_z_effective = 0.0; ///< surviving single-click raw bits, n - nd
};

/// Cost of discarding Z double clicks, bounding their coherence by 1 bit each.
DiscardCost double_click_cost_discard(const ZBasisCounts& z);

/// Sum of the budget. Throws ConfigError when a component is outside (0, 1)
/// or the total reaches 1.
double total_epsilon(const EpsilonBudget& budget);

}  // namespace siqrng

#endif
