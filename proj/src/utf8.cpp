#include "stylecast/utf8.hpp"

#include <string>

#include "stylecast/errors.hpp"

namespace stylecast::utf8 {

namespace {

[[noreturn]] void bad(std::size_t pos) {
  throw DataError("invalid UTF-8 at byte " + std::to_string(pos));
}

}  // namespace

char32_t decode(std::string_view text, std::size_t& pos) {
  const auto at = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(text[i]);
  };
  const std::size_t start = pos;
  const unsigned char b0 = at(pos);

  if (b0 < 0x80) {
    ++pos;
    return b0;
  }

  int extra;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    bad(start);
  }

  if (pos + static_cast<std::size_t>(extra) >= text.size()) bad(start);

  for (int i = 1; i <= extra; ++i) {
    const unsigned char b = at(pos + static_cast<std::size_t>(i));
    if ((b & 0xC0) != 0x80) bad(start);
    cp = (cp << 6) | (b & 0x3F);
  }

  // Overlong forms, surrogates, out of range.
  if (extra == 1 && cp < 0x80) bad(start);
  if (extra == 2 && cp < 0x800) bad(start);
  if (extra == 3 && cp < 0x10000) bad(start);
  if (cp >= 0xD800 && cp <= 0xDFFF) bad(start);
  if (cp > 0x10FFFF) bad(start);

  pos += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void validate(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) decode(text, pos);
}

}  // namespace stylecast::utf8
