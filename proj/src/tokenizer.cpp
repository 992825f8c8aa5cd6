#include "stylecast/tokenizer.hpp"

#include <algorithm>
#include <fstream>

#include "stylecast/chars.hpp"
#include "stylecast/data_files.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/utf8.hpp"

namespace stylecast {

EmoticonLexicon EmoticonLexicon::from_list(std::vector<std::string> entries) {
  EmoticonLexicon lex;
  for (auto& e : entries) {
    if (e.empty()) continue;
    bool has_space = false;
    for (char c : e) {
      if (static_cast<unsigned char>(c) <= ' ') has_space = true;
    }
    if (has_space) continue;  // entries must be single tokens
    lex.max_bytes_ = std::max(lex.max_bytes_, e.size());
    lex.entries_.insert(std::move(e));
  }
  return lex;
}

EmoticonLexicon EmoticonLexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open emoticon lexicon: " + path.string());
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) entries.push_back(line);
  }
  return from_list(std::move(entries));
}

const EmoticonLexicon& EmoticonLexicon::shared() {
  static const EmoticonLexicon lex = from_file(emoticon_lexicon_path());
  return lex;
}

std::size_t EmoticonLexicon::match(std::string_view text, std::size_t pos) const {
  const std::size_t remaining = text.size() - pos;
  std::size_t len = std::min(max_bytes_, remaining);
  for (; len >= 2; --len) {
    if (entries_.count(std::string(text.substr(pos, len)))) return len;
  }
  return 0;
}

bool EmoticonLexicon::contains(std::string_view token) const {
  return entries_.count(std::string(token)) > 0;
}

Tokenizer::Tokenizer() : lexicon_(EmoticonLexicon::shared()) {}

Tokenizer::Tokenizer(EmoticonLexicon lexicon) : lexicon_(std::move(lexicon)) {}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  // Decode up front; throws on invalid UTF-8.
  std::vector<char32_t> cps;
  std::vector<std::size_t> starts;  // byte offset of each codepoint, plus end
  {
    std::size_t pos = 0;
    while (pos < text.size()) {
      starts.push_back(pos);
      cps.push_back(utf8::decode(text, pos));
    }
    starts.push_back(text.size());
  }

  std::vector<std::string> out;
  const std::size_t n = cps.size();
  const auto slice = [&](std::size_t a, std::size_t b) {
    return std::string(text.substr(starts[a], starts[b] - starts[a]));
  };

  std::size_t i = 0;
  while (i < n) {
    if (chars::is_space(cps[i])) {
      ++i;
      continue;
    }
    // Emoticons win over everything at a token boundary, longest first.
    if (const std::size_t bytes = lexicon_.match(text, starts[i]); bytes > 0) {
      out.push_back(std::string(text.substr(starts[i], bytes)));
      const std::size_t end = starts[i] + bytes;
      while (i < n && starts[i] < end) ++i;
      continue;
    }
    // A pair of regional indicators is one flag.
    if (chars::is_regional_indicator(cps[i])) {
      std::size_t j = i + 1;
      if (j < n && chars::is_regional_indicator(cps[j])) ++j;
      out.push_back(slice(i, j));
      i = j;
      continue;
    }
    // Emoji scalar plus any extenders, glued across ZWJ into one token.
    if (chars::is_emoji_base(cps[i])) {
      std::size_t j = i + 1;
      for (;;) {
        while (j < n && chars::is_emoji_extender(cps[j])) ++j;
        if (j + 1 < n && cps[j] == chars::kZwj &&
            (chars::is_emoji_base(cps[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back(slice(i, j));
      i = j;
      continue;
    }
    // Runs of the same punctuation mark stay one token ("!!!", "...").
    if (chars::is_punct(cps[i]) || chars::is_emoji_extender(cps[i]) ||
        cps[i] == chars::kZwj) {
      std::size_t j = i + 1;
      while (j < n && cps[j] == cps[i]) ++j;
      out.push_back(slice(i, j));
      i = j;
      continue;
    }
    // Word run.
    std::size_t j = i;
    while (j < n && chars::is_word(cps[j])) ++j;
    if (j == i) j = i + 1;  // unclassified stray, keep it as its own token
    out.push_back(slice(i, j));
    i = j;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  static const Tokenizer tok;
  return tok.tokenize(text);
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace stylecast
