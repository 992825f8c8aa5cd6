#include "stylecast/chars.hpp"

namespace stylecast::chars {

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case 0x0085:  // NEL
    case 0x00A0:  // NBSP
    case 0x1680:
    case 0x2028: case 0x2029:
    case 0x202F: case 0x205F:
    case 0x200B:  // zero-width space
    case 0x3000:
    case 0xFEFF:  // BOM / zero-width no-break space
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_emoji_base(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1F0FF) ||  // mahjong, dominoes, cards
         (cp >= 0x1F300 && cp <= 0x1F6FF) ||  // pictographs, emoticons, transport
         (cp >= 0x1F700 && cp <= 0x1F7FF) ||
         (cp >= 0x1F900 && cp <= 0x1F9FF) ||
         (cp >= 0x1FA00 && cp <= 0x1FAFF) ||
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // arrows, stars
         (cp >= 0x1F1E6 && cp <= 0x1F1FF);    // regional indicators
}

bool is_emoji_extender(char32_t cp) {
  return cp == 0xFE0F ||                      // variation selector-16
         (cp >= 0x1F3FB && cp <= 0x1F3FF) ||  // skin tones
         cp == 0x20E3;                        // combining keycap
}

bool is_regional_indicator(char32_t cp) {
  return cp >= 0x1F1E6 && cp <= 0x1F1FF;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         cp == 0x200C || cp == kZwj ||  // orphan joiners surface as punctuation
         cp == 0xFE0F || cp == 0x20E3 ||
         (cp >= 0x3001 && cp <= 0x303F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_word(char32_t cp) {
  return !is_space(cp) && !is_emoji_base(cp) && !is_emoji_extender(cp) &&
         cp != kZwj && !is_punct(cp);
}

}  // namespace stylecast::chars
