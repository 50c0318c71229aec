#include "siqrng/bit_io.h"

#include <fstream>
#include <iterator>
#include <sstream>

#include "siqrng/errors.h"

namespace siqrng {

BitString parse_bit_string(std::string_view text) {
    BitString bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (c != ' ' && c != '\n' && c != '\r' && c != '\t') {
            throw ParseError(std::string("invalid character '") + c + "' in bit string");
        }
    }
    return bits;
}

std::string to_bit_string(const BitString& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<std::uint8_t> pack_msb_first(const BitString& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return bytes;
}

BitString unpack_msb_first(const std::vector<std::uint8_t>& bytes,
                           std::optional<std::size_t> bit_count) {
    const std::size_t available = bytes.size() * 8;
    const std::size_t count = bit_count.value_or(available);
    if (count > available) {
        throw LengthMismatchError("requested " + std::to_string(count) + " bits from " +
                                  std::to_string(bytes.size()) + " bytes");
    }
    BitString bits(count, 0);
    for (std::size_t i = 0; i < count; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return bits;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace siqrng
