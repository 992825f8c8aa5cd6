#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace stylecast {

// ASCII-art emoticons (":)", "<3", "^_^", ...) loaded from a plain-text
// file, one per line. Matching is longest-first at token boundaries.
class EmoticonLexicon {
 public:
  static EmoticonLexicon from_file(const std::filesystem::path& path);
  static EmoticonLexicon from_list(std::vector<std::string> entries);
  // Shipped lexicon from the data directory.
  static const EmoticonLexicon& shared();

  // Byte length of the longest lexicon entry matching at `pos`, 0 if none.
  std::size_t match(std::string_view text, std::size_t pos) const;
  bool contains(std::string_view token) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
  std::size_t max_bytes_ = 0;
};

// Splits social-media text into tokens. Case is preserved. Emoji scalars
// and ZWJ sequences are one token each, emoticons come from the lexicon,
// runs of the same punctuation mark stay together, and everything else
// breaks on whitespace and letter/punctuation boundaries.
class Tokenizer {
 public:
  Tokenizer();  // uses the shipped emoticon lexicon
  explicit Tokenizer(EmoticonLexicon lexicon);

  std::vector<std::string> tokenize(std::string_view text) const;

  const EmoticonLexicon& lexicon() const { return lexicon_; }

 private:
  EmoticonLexicon lexicon_;
};

// Tokenize with a process-wide default Tokenizer.
std::vector<std::string> tokenize(std::string_view text);

// Inverse of tokenization up to whitespace: joins tokens with single spaces.
std::string detokenize(const std::vector<std::string>& tokens);

}  // namespace stylecast
