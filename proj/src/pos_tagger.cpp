#include "stylecast/pos_tagger.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "stylecast/chars.hpp"
#include "stylecast/data_files.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/utf8.hpp"

namespace stylecast {

namespace {

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "NOUN", "VERB", "ADJ",  "ADV",   "PRON",  "DET",   "ADP",
    "NUM",  "CONJ", "PRT",  "X",     "PUNCT", "EMOJI", "EMOTICON"};

std::string to_lower_ascii(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string_view tag_name(Tag t) { return kTagNames[static_cast<std::size_t>(t)]; }

std::optional<Tag> tag_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<Tag>(i);
  }
  return std::nullopt;
}

std::map<std::string, Tag> PosTagger::load_word_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tag lexicon: " + path.string());
  std::map<std::string, Tag> lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string word, tag;
    if (!(ss >> word >> tag)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected \"word TAG\"");
    }
    const auto t = tag_from_name(tag);
    if (!t) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": unknown tag " + tag);
    }
    lexicon[to_lower_ascii(word)] = *t;
  }
  return lexicon;
}

PosTagger::PosTagger()
    : emoticons_(EmoticonLexicon::shared()),
      word_lexicon_(load_word_lexicon(tag_lexicon_path())) {}

PosTagger::PosTagger(EmoticonLexicon emoticons, std::map<std::string, Tag> word_lexicon)
    : emoticons_(std::move(emoticons)), word_lexicon_(std::move(word_lexicon)) {}

Tag PosTagger::tag_token(const std::string& token) const {
  // Decode once; the classifying cascade below works on codepoints.
  std::vector<char32_t> cps;
  {
    std::size_t pos = 0;
    while (pos < token.size()) cps.push_back(utf8::decode(token, pos));
  }
  if (cps.empty()) return Tag::X;

  // 1. Emoji outranks everything, including lexicon entries.
  for (char32_t cp : cps) {
    if (chars::is_emoji_base(cp) || chars::is_regional_indicator(cp)) {
      return Tag::Emoji;
    }
  }
  // 2. Emoticon lexicon.
  if (emoticons_.contains(token)) return Tag::Emoticon;
  // 3. Pure punctuation.
  {
    bool all_punct = true;
    for (char32_t cp : cps) {
      if (!chars::is_punct(cp) && !chars::is_emoji_extender(cp) && cp != chars::kZwj) {
        all_punct = false;
        break;
      }
    }
    if (all_punct) return Tag::Punct;
  }
  // 4. Word lexicon (closed classes plus common open-class words).
  if (const auto it = word_lexicon_.find(to_lower_ascii(token));
      it != word_lexicon_.end()) {
    return it->second;
  }
  // 5. Numerals: digits with optional . or , group separators.
  {
    bool numeral = chars::is_ascii_digit(cps.front()) && chars::is_ascii_digit(cps.back());
    bool prev_digit = false;
    for (char32_t cp : cps) {
      if (chars::is_ascii_digit(cp)) {
        prev_digit = true;
      } else if ((cp == U'.' || cp == U',') && prev_digit) {
        prev_digit = false;
      } else {
        numeral = false;
        break;
      }
    }
    if (numeral) return Tag::Num;
  }
  // 6. Alphabetic tokens: suffix heuristics, then NOUN.
  {
    bool alphabetic = true;
    for (char32_t cp : cps) {
      if (!chars::is_word(cp) || chars::is_ascii_digit(cp)) {
        alphabetic = false;
        break;
      }
    }
    if (alphabetic) {
      const std::string lower = to_lower_ascii(token);
      if (lower.size() >= 4 && ends_with(lower, "ly")) return Tag::Adv;
      if (lower.size() >= 5 && ends_with(lower, "ing")) return Tag::Verb;
      if (lower.size() >= 4 && ends_with(lower, "ed")) return Tag::Verb;
      if (lower.size() >= 5 && (ends_with(lower, "ous") || ends_with(lower, "ful"))) {
        return Tag::Adj;
      }
      return Tag::Noun;
    }
  }
  // 7. Everything else (mixed alphanumerics, stray symbols).
  return Tag::X;
}

TaggedSentence PosTagger::tag(const std::vector<std::string>& tokens) const {
  TaggedSentence out;
  out.tokens = tokens;
  out.tags.reserve(tokens.size());
  for (const auto& token : tokens) out.tags.push_back(tag_token(token));
  return out;
}

std::string format_tagged(const TaggedSentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i > 0) out += ' ';
    for (char c : sentence.tokens[i]) {
      if (c == '/') out += "\\/";
      else out += c;
    }
    out += '/';
    out += tag_name(sentence.tags[i]);
  }
  return out;
}

TagFile parse_tags(const std::string& text, const std::string& origin) {
  TagFile file;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TaggedSentence sentence;
    std::istringstream items(line);
    std::string item;
    while (items >> item) {
      // Split at the last unescaped '/'.
      std::size_t slash = std::string::npos;
      for (std::size_t i = 0; i < item.size(); ++i) {
        if (item[i] == '/' && (i == 0 || item[i - 1] != '\\')) slash = i;
      }
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size()) {
        throw DataError(origin + ":" + std::to_string(line_no) +
                        ": malformed token \"" + item + "\" (expected surface/TAG)");
      }
      std::string surface;
      for (std::size_t i = 0; i < slash; ++i) {
        if (item[i] == '\\' && i + 1 < slash && item[i + 1] == '/') continue;
        surface += item[i];
      }
      const std::string tag_str = item.substr(slash + 1);
      Tag tag = Tag::X;
      if (const auto t = tag_from_name(tag_str)) {
        tag = *t;
      } else {
        ++file.unknown_tag_count;
      }
      sentence.tokens.push_back(std::move(surface));
      sentence.tags.push_back(tag);
    }
    if (!sentence.tokens.empty()) file.sentences.push_back(std::move(sentence));
  }
  return file;
}

TagFile load_tags(const std::filesystem::path& path) {
  return parse_tags(read_text_file(path), path.string());
}

}  // namespace stylecast
