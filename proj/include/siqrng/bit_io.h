#ifndef SIQRNG_BIT_IO_H
#define SIQRNG_BIT_IO_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "siqrng/extractor.h"

namespace siqrng {

/// ASCII form: a string of '0' and '1'. Whitespace is ignored on input.
BitString parse_bit_string(std::string_view text);
std::string to_bit_string(const BitString& bits);

/// Binary form: bits packed most-significant-bit first within each byte; the
/// last byte is zero padded.
std::vector<std::uint8_t> pack_msb_first(const BitString& bits);
/// Unpacks `bit_count` bits, or all 8 * bytes.size() bits when omitted.
BitString unpack_msb_first(const std::vector<std::uint8_t>& bytes,
                           std::optional<std::size_t> bit_count = std::nullopt);

std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::string read_text_file(const std::string& path);

}  // namespace siqrng

#endif
