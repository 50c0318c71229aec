#ifndef SIQRNG_CLI_KV_DOCUMENT_H
#define SIQRNG_CLI_KV_DOCUMENT_H

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace siqrng::cli {

/// Reals with 9 significant digits.
std::string format_real(double v);
/// Whole numbers exactly, anything else as a real.
std::string format_count(double v);

/// Ordered `key = value` lines.
class KvDocument {
   public:
    void add(std::string key, std::string value);
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value) { add(std::move(key), format_real(value)); }
    void add(std::string key, bool value) { add(std::move(key), value ? "true" : "false"); }
    void add(std::string key, std::int64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
    void add_count(std::string key, double value) { add(std::move(key), format_count(value)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    void write(std::ostream& out) const;

   private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace siqrng::cli

#endif
