#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylecast/tokenizer.hpp"

namespace stylecast {

// Coarse universal-style tag inventory, extended with EMOJI and EMOTICON
// because those carry register in social-media text. Order is fixed; the
// index is the tag id.
enum class Tag : std::uint8_t {
  Noun, Verb, Adj, Adv, Pron, Det, Adp, Num, Conj, Prt, X, Punct, Emoji, Emoticon
};

inline constexpr int kTagCount = 14;

std::string_view tag_name(Tag t);
std::optional<Tag> tag_from_name(std::string_view name);

struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<Tag> tags;  // same length as tokens
};

// Deterministic cascade: emoji > emoticon lexicon > punctuation class >
// word lexicon > numeral pattern > suffix heuristics > NOUN, with X for
// unknown non-alphabetic tokens. Tagging accuracy matters less here than
// giving both corpora of a comparison the same treatment.
class PosTagger {
 public:
  PosTagger();  // shipped lexicons
  PosTagger(EmoticonLexicon emoticons, std::map<std::string, Tag> word_lexicon);

  Tag tag_token(const std::string& token) const;
  TaggedSentence tag(const std::vector<std::string>& tokens) const;

  static std::map<std::string, Tag> load_word_lexicon(const std::filesystem::path& path);

 private:
  EmoticonLexicon emoticons_;
  std::map<std::string, Tag> word_lexicon_;  // lowercased surfaces
};

struct TagFile {
  std::vector<TaggedSentence> sentences;
  int unknown_tag_count = 0;  // tags outside the inventory, mapped to X
};

// One sentence per line, tokens as surface/TAG separated by single spaces;
// "/" inside a surface is escaped as "\/". DataError carries the line
// number for malformed lines.
TagFile load_tags(const std::filesystem::path& path);
TagFile parse_tags(const std::string& text, const std::string& origin);

std::string format_tagged(const TaggedSentence& sentence);

}  // namespace stylecast
