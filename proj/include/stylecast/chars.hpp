#pragma once

#include <cstdint>

// Codepoint classification shared by the tokenizer and the tagger.
// Four token-level classes: whitespace, emoji, punctuation, word. Anything
// that is none of the first three (letters, digits, CJK, marks) counts as
// a word character.
namespace stylecast::chars {

inline constexpr char32_t kZwj = 0x200D;

bool is_space(char32_t cp);
bool is_emoji_base(char32_t cp);
// Codepoints that extend an emoji sequence: VS16, skin tones, keycap.
bool is_emoji_extender(char32_t cp);
bool is_regional_indicator(char32_t cp);
bool is_punct(char32_t cp);
bool is_ascii_digit(char32_t cp);
bool is_word(char32_t cp);

}  // namespace stylecast::chars
