#include "siqrng/extractor.h"

#include <bit>
#include <cmath>
#include <string>

#include "siqrng/errors.h"

namespace siqrng {

namespace {

void check_inputs(std::span<const std::uint8_t> raw, const ToeplitzSpec& spec) {
    spec.validate();
    if (raw.size() != spec.n) {
        throw LengthMismatchError("raw string has " + std::to_string(raw.size()) +
                                  " bits, hash expects " + std::to_string(spec.n));
    }
}

// Bit t of the string lives in word t / 64 at position t % 64.
std::vector<std::uint64_t> pack_words(std::span<const std::uint8_t> bits, bool reversed) {
    std::vector<std::uint64_t> words(bits.size() / 64 + 2, 0);
    const std::size_t n = bits.size();
    for (std::size_t t = 0; t < n; ++t) {
        std::uint8_t b = reversed ? bits[n - 1 - t] : bits[t];
        if (b & 1u) words[t / 64] |= std::uint64_t{1} << (t % 64);
    }
    return words;
}

}  // namespace

void ToeplitzSpec::validate() const {
    if (m < 1 || m > n) {
        throw LengthMismatchError("Toeplitz output length must satisfy 1 <= m <= n (n = " +
                                  std::to_string(n) + ", m = " + std::to_string(m) + ")");
    }
    if (seed.size() != n + m - 1) {
        throw LengthMismatchError("Toeplitz seed needs " + std::to_string(n + m - 1) +
                                  " bits, got " + std::to_string(seed.size()));
    }
}

std::int64_t extraction_penalty(double eps2) {
    if (!(eps2 > 0.0 && eps2 < 1.0)) throw DomainError("eps2 must lie in (0, 1)");
    return static_cast<std::int64_t>(std::ceil(-std::log2(eps2)));
}

std::size_t output_length(double net_bits, double eps2) {
    const std::int64_t t_e = extraction_penalty(eps2);
    if (!(net_bits > 0.0)) return 0;
    const double whole = std::floor(net_bits);
    if (whole <= static_cast<double>(t_e)) return 0;
    return static_cast<std::size_t>(whole) - static_cast<std::size_t>(t_e);
}

BitString toeplitz_extract_reference(std::span<const std::uint8_t> raw,
                                     const ToeplitzSpec& spec) {
    check_inputs(raw, spec);
    BitString out(spec.m, 0);
    for (std::size_t i = 0; i < spec.m; ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < spec.n; ++j) {
            acc ^= static_cast<std::uint8_t>(spec.seed[i + spec.n - 1 - j] & raw[j] & 1u);
        }
        out[i] = acc;
    }
    return out;
}

// Substituting t = n - 1 - j, row i is the inner product of the seed window
// seed[i .. i + n - 1] with the reversed input, so every row reuses the same
// packed input and reads a shifted window of the packed seed.
BitString toeplitz_extract(std::span<const std::uint8_t> raw, const ToeplitzSpec& spec) {
    check_inputs(raw, spec);
    const std::size_t n = spec.n;
    const auto input = pack_words(raw, true);
    const auto seed = pack_words(spec.seed, false);
    const std::size_t full_words = n / 64;
    const std::size_t tail_bits = n % 64;
    const std::uint64_t tail_mask = tail_bits ? (std::uint64_t{1} << tail_bits) - 1 : 0;

    BitString out(spec.m, 0);
    for (std::size_t i = 0; i < spec.m; ++i) {
        const std::size_t base = i / 64;
        const unsigned shift = static_cast<unsigned>(i % 64);
        auto window = [&](std::size_t w) {
            std::uint64_t lo = seed[base + w] >> shift;
            std::uint64_t hi = shift ? seed[base + w + 1] << (64 - shift) : 0;
            return lo | hi;
        };
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < full_words; ++w) acc ^= window(w) & input[w];
        if (tail_bits) acc ^= window(full_words) & input[full_words] & tail_mask;
        out[i] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }
    return out;
}

}  // namespace siqrng
