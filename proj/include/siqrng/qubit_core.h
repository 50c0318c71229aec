#ifndef SIQRNG_QUBIT_CORE_H
#define SIQRNG_QUBIT_CORE_H

#include <array>
#include <cstddef>
#include <span>

namespace siqrng {

/// Slack allowed on the Bloch-ball constraint before a tomogram is rejected.
inline constexpr double kPhysicalityTol = 1e-9;
/// Slack allowed on the normalization of a probability vector.
inline constexpr double kNormalizationTol = 1e-9;

/// A qubit state in tomographic form. Each entry is the probability of the
/// first outcome of the corresponding basis measurement: |+> for X, |+i> for Y
/// and |0> for Z. The density matrix is (I + (2p - 1) . sigma) / 2.
///
/// Construction does not check physicality; a tomogram outside the Bloch ball
/// is representable so that inconsistent data can be reported, and the
/// entropy functions reject it.
struct QubitTomogram {
    double p_x = 0.5;
    double p_y = 0.5;
    double p_z = 0.5;

    /// Tomogram of the state (I + x sx + y sy + z sz) / 2.
    static QubitTomogram from_bloch(double x, double y, double z);

    std::array<double, 3> bloch_vector() const;
    /// Every entry lies in [0, 1].
    bool in_range() const;
    /// |bloch_vector|^2 <= 1 + tol.
    bool is_physical(double tol = kPhysicalityTol) const;
};

/// Length of the Bloch vector, sqrt(4(px^2+py^2+pz^2-px-py-pz)+3).
class PurityRadius {
   public:
    explicit PurityRadius(const QubitTomogram& t);

    /// Unclamped value; in [0, sqrt 3] for in-range tomograms.
    double value() const { return value_; }
    bool is_physical(double tol = kPhysicalityTol) const { return value_ <= 1.0 + tol; }
    /// Value clamped to 1 when within tolerance above it; throws DomainError
    /// when the tomogram lies outside the Bloch ball.
    double checked(double tol = kPhysicalityTol) const;

   private:
    double value_;
};

/// Binary Shannon entropy in bits with 0 log 0 = 0. Throws DomainError
/// outside [0, 1].
double binary_entropy(double p);

/// Shannon entropy in bits of a normalized distribution.
double shannon_entropy(std::span<const double> distribution);

/// Entropy of the eigenvalues (1 +/- p_o) / 2.
double von_neumann_entropy(const QubitTomogram& t);

/// Relative entropy of coherence with respect to the Z basis:
/// H(p_z) - H((1 + p_o) / 2).
double coherence_rel_entropy(const QubitTomogram& t);

/// Coherence witness H(distribution) - log2 d, where d is the number of
/// outcomes. Nonpositive; zero exactly for the uniform distribution.
double witness_value(std::span<const double> distribution);

/// Lower bound on the coherence of any state whose outcome distribution in a
/// basis mutually unbiased to the reference is `distribution`:
/// log2 d - H(distribution). `dimension` must match the distribution size.
double witness_coherence_bound(std::span<const double> distribution, std::size_t dimension);

}  // namespace siqrng

#endif
