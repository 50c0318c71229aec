#ifndef SIQRNG_EXTRACTOR_H
#define SIQRNG_EXTRACTOR_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace siqrng {

/// Unpacked bit string, one 0/1 value per element.
using BitString = std::vector<std::uint8_t>;

/// An m x n Toeplitz matrix over GF(2) given by its n + m - 1 diagonals.
///
/// Layout: T[i][j] = seed[i - j + n - 1] for row i in [0, m), column j in
/// [0, n). Row 0 reads seed[n-1], seed[n-2], ..., seed[0]; each following row
/// is the previous one shifted right by one with the next seed bit entering
/// on the left.
struct ToeplitzSpec {
    std::size_t n = 0;  ///< input length
    std::size_t m = 0;  ///< output length
    BitString seed;     ///< exactly n + m - 1 bits

    /// Throws LengthMismatchError unless 1 <= m <= n and the seed length
    /// is n + m - 1.
    void validate() const;
};

/// Extraction penalty t_e = ceil(log2(1 / eps2)).
std::int64_t extraction_penalty(double eps2);

/// max(0, floor(net_bits) - t_e).
std::size_t output_length(double net_bits, double eps2);

/// Packed evaluation of the hash, 64 columns per word.
BitString toeplitz_extract(std::span<const std::uint8_t> raw, const ToeplitzSpec& spec);

/// Row-by-row matrix-vector product straight from the layout definition. Used
/// as the normative reference for toeplitz_extract.
BitString toeplitz_extract_reference(std::span<const std::uint8_t> raw,
                                     const ToeplitzSpec& spec);

}  // namespace siqrng

#endif
