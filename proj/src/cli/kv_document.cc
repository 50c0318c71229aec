#include "siqrng/cli/kv_document.h"

#include <cmath>
#include <cstdio>

namespace siqrng::cli {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_count(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
        return std::to_string(static_cast<long long>(v));
    }
    return format_real(v);
}

void KvDocument::add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
}

void KvDocument::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

}  // namespace siqrng::cli
