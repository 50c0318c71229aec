#ifndef SIQRNG_CLICK_IO_H
#define SIQRNG_CLICK_IO_H

#include <string>
#include <string_view>

#include "siqrng/acquisition.h"

namespace siqrng {

/// Parses the flat text form: one `basis,n0,n1,nd` line per basis, counts as
/// unsigned ASCII decimal. Blank lines and lines starting with '#' are
/// skipped. X, Y and Z must each appear exactly once.
ClickRecord parse_click_record_text(std::string_view text);

/// Parses the structured form
/// {"X": {"n0": .., "n1": .., "nd": ..}, "Y": {..}, "Z": {..}}, optionally
/// nested under a top-level "counts" key.
ClickRecord parse_click_record_json(std::string_view text);

/// Dispatches on the first non-blank character: '{' selects JSON.
ClickRecord parse_click_record(std::string_view text);

/// Text form, X then Y then Z. Expected counts are rounded to the nearest
/// integer.
std::string format_click_record(const ClickRecord& record);

}  // namespace siqrng

#endif
