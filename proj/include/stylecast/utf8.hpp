#pragma once

#include <cstddef>
#include <string_view>

namespace stylecast::utf8 {

// Decodes the codepoint starting at byte offset `pos` and advances `pos`
// past it. Throws DataError on malformed input (stray continuation bytes,
// truncated sequences, overlong encodings, surrogates, out-of-range).
char32_t decode(std::string_view text, std::size_t& pos);

// Validates the whole string; throws DataError with the byte offset of the
// first bad sequence.
void validate(std::string_view text);

}  // namespace stylecast::utf8
