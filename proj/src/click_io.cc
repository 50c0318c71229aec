#include "siqrng/click_io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "siqrng/errors.h"

namespace siqrng {

namespace {

std::string_view trim(std::string_view s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::optional<Basis> basis_from_name(std::string_view name) {
    if (name == "X" || name == "x") return Basis::X;
    if (name == "Y" || name == "y") return Basis::Y;
    if (name == "Z" || name == "z") return Basis::Z;
    return std::nullopt;
}

std::uint64_t parse_count(std::string_view field, std::size_t line_no) {
    field = trim(field);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                         "' is not an unsigned count");
    }
    return v;
}

}  // namespace

ClickRecord parse_click_record_text(std::string_view text) {
    ClickRecord record;
    std::array<bool, 3> seen{};
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 4) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected basis,n0,n1,nd");
        }
        auto basis = basis_from_name(trim(fields[0]));
        if (!basis) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown basis '" +
                             std::string(trim(fields[0])) + "'");
        }
        if (seen[index(*basis)]) {
            throw ParseError("line " + std::to_string(line_no) + ": basis " +
                             std::string(basis_name(*basis)) + " given twice");
        }
        seen[index(*basis)] = true;
        record[*basis] = {static_cast<double>(parse_count(fields[1], line_no)),
                          static_cast<double>(parse_count(fields[2], line_no)),
                          static_cast<double>(parse_count(fields[3], line_no))};
    }
    for (Basis b : kAllBases) {
        if (!seen[index(b)]) {
            throw ParseError("missing counts for basis " + std::string(basis_name(b)));
        }
    }
    return record;
}

ClickRecord parse_click_record_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON counts document: ") + e.what());
    }
    if (doc.contains("counts")) doc = doc["counts"];
    if (!doc.is_object()) throw ParseError("counts document must be an object");

    ClickRecord record;
    for (Basis b : kAllBases) {
        std::string key(basis_name(b));
        if (!doc.contains(key)) throw ParseError("missing counts for basis " + key);
        const auto& entry = doc[key];
        auto field = [&](const char* name) {
            if (!entry.contains(name) || !entry[name].is_number_unsigned()) {
                throw ParseError("basis " + key + ": '" + name +
                                 "' must be an unsigned integer");
            }
            return static_cast<double>(entry[name].get<std::uint64_t>());
        };
        record[b] = {field("n0"), field("n1"), field("nd")};
    }
    return record;
}

ClickRecord parse_click_record(std::string_view text) {
    auto body = trim(text);
    if (!body.empty() && body.front() == '{') return parse_click_record_json(body);
    return parse_click_record_text(text);
}

std::string format_click_record(const ClickRecord& record) {
    std::ostringstream out;
    for (Basis b : kAllBases) {
        const auto& c = record[b];
        out << basis_name(b) << ',' << std::llround(c.n0) << ',' << std::llround(c.n1) << ','
            << std::llround(c.nd) << '\n';
    }
    return out.str();
}

}  // namespace siqrng
