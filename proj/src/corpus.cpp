#include "stylecast/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/rng.hpp"

namespace stylecast {

void SplitSpec::validate() const {
  if (train_fraction < 0 || valid_fraction < 0 || test_fraction < 0) {
    throw DataError("split fractions must be nonnegative");
  }
  const double sum = train_fraction + valid_fraction + test_fraction;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DataError("split fractions must sum to 1");
  }
}

namespace {

Comment make_comment(std::vector<std::string> tokens, std::string id,
                     std::map<std::string, std::string> meta = {}) {
  Comment c;
  c.tokens = std::move(tokens);
  c.source_id = std::move(id);
  c.meta = std::move(meta);
  return c;
}

}  // namespace

Corpus ingest_jsonl(const std::filesystem::path& path, const Tokenizer& tok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus input: " + path.string());
  Corpus corpus;
  corpus.provenance.source = path.string();
  std::string line;
  std::size_t line_no = 0;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed JSON object");
    }
    if (!j.contains("text") || !j.at("text").is_string()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": missing \"text\" string");
    }
    std::string id = std::to_string(line_no);
    if (j.contains("id")) {
      const auto& jid = j.at("id");
      if (jid.is_string()) {
        id = jid.get<std::string>();
      } else if (jid.is_number_integer()) {
        id = std::to_string(jid.get<std::int64_t>());
      } else {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": \"id\" must be a string or integer");
      }
    }
    std::map<std::string, std::string> meta;
    if (j.contains("meta")) {
      const auto& jm = j.at("meta");
      if (!jm.is_object()) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": \"meta\" must be an object");
      }
      for (const auto& [k, v] : jm.items()) {
        meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    auto tokens = tok.tokenize(j.at("text").get<std::string>());
    if (tokens.empty()) {
      ++skipped;
      continue;
    }
    corpus.comments.push_back(make_comment(std::move(tokens), std::move(id),
                                           std::move(meta)));
  }
  if (skipped > 0) {
    corpus.provenance.notes.push_back("skipped " + std::to_string(skipped) +
                                      " empty comments");
  }
  return corpus;
}

Corpus ingest_plain(const std::filesystem::path& path, const Tokenizer& tok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus input: " + path.string());
  Corpus corpus;
  corpus.provenance.source = path.string();
  std::string line;
  std::size_t line_no = 0;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = tok.tokenize(line);
    if (tokens.empty()) {
      ++skipped;
      continue;
    }
    corpus.comments.push_back(make_comment(std::move(tokens), std::to_string(line_no)));
  }
  if (skipped > 0) {
    corpus.provenance.notes.push_back("skipped " + std::to_string(skipped) +
                                      " empty lines");
  }
  return corpus;
}

Corpus load_corpus_any(const std::filesystem::path& path, const Tokenizer& tok) {
  const std::string text = read_text_file(path);
  // A corpus artifact parses as one JSON document with a format_version.
  nlohmann::json whole = nlohmann::json::parse(text, nullptr, false);
  if (!whole.is_discarded() && whole.is_object() && whole.contains("format_version")) {
    return corpus_from_json(whole);
  }
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return ingest_jsonl(path, tok);
  }
  return ingest_plain(path, tok);
}

nlohmann::json corpus_to_json(const Corpus& corpus) {
  nlohmann::json comments = nlohmann::json::array();
  for (const auto& c : corpus.comments) {
    nlohmann::json jc{{"id", c.source_id}, {"tokens", c.tokens}};
    if (!c.meta.empty()) jc["meta"] = c.meta;
    comments.push_back(std::move(jc));
  }
  nlohmann::json prov{{"source", corpus.provenance.source}};
  if (corpus.provenance.min_freq) prov["min_freq"] = *corpus.provenance.min_freq;
  if (corpus.provenance.max_len) prov["max_len"] = *corpus.provenance.max_len;
  if (corpus.provenance.vocab_fingerprint) {
    prov["vocab_fingerprint"] = *corpus.provenance.vocab_fingerprint;
  }
  if (!corpus.provenance.notes.empty()) prov["notes"] = corpus.provenance.notes;
  return nlohmann::json{{"format_version", kFormatVersion},
                        {"provenance", std::move(prov)},
                        {"comments", std::move(comments)}};
}

Corpus corpus_from_json(const nlohmann::json& j) {
  require_format_version(j, "corpus");
  Corpus corpus;
  try {
    const auto& prov = j.at("provenance");
    corpus.provenance.source = prov.value("source", std::string{});
    if (prov.contains("min_freq")) corpus.provenance.min_freq = prov.at("min_freq").get<int>();
    if (prov.contains("max_len")) corpus.provenance.max_len = prov.at("max_len").get<int>();
    if (prov.contains("vocab_fingerprint")) {
      corpus.provenance.vocab_fingerprint = prov.at("vocab_fingerprint").get<std::string>();
    }
    if (prov.contains("notes")) {
      corpus.provenance.notes = prov.at("notes").get<std::vector<std::string>>();
    }
    for (const auto& jc : j.at("comments")) {
      Comment c;
      c.source_id = jc.at("id").get<std::string>();
      c.tokens = jc.at("tokens").get<std::vector<std::string>>();
      if (jc.contains("meta")) {
        c.meta = jc.at("meta").get<std::map<std::string, std::string>>();
      }
      if (c.tokens.empty()) throw DataError("corpus: empty comment " + c.source_id);
      corpus.comments.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("corpus: ") + e.what());
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  save_json_atomic(corpus_to_json(corpus), path);
}

Corpus load_corpus(const std::filesystem::path& path) {
  return corpus_from_json(load_json_file(path));
}

Vocabulary build_vocabulary(const Corpus& corpus, int min_freq) {
  if (corpus.empty()) throw DataError("build_vocabulary: empty corpus");
  std::map<std::string, std::int64_t> counts;
  for (const auto& comment : corpus.comments) {
    for (const auto& token : comment.tokens) {
      if (Vocabulary::is_special_surface(token)) continue;
      ++counts[token];
    }
  }
  return Vocabulary::from_counts(counts, min_freq);
}

Corpus drop_long_comments(const Corpus& corpus, int max_len) {
  Corpus out;
  out.provenance = corpus.provenance;
  out.provenance.max_len = max_len;
  std::size_t dropped = 0;
  for (const auto& c : corpus.comments) {
    if (c.tokens.size() > static_cast<std::size_t>(max_len)) {
      ++dropped;
      continue;
    }
    out.comments.push_back(c);
  }
  if (dropped > 0) {
    out.provenance.notes.push_back("dropped " + std::to_string(dropped) +
                                   " comments longer than " + std::to_string(max_len));
  }
  return out;
}

Corpus filter_corpus(const Corpus& corpus, int max_len, const Vocabulary& vocab) {
  Corpus out = drop_long_comments(corpus, max_len);
  out.provenance.min_freq = vocab.min_freq();
  out.provenance.vocab_fingerprint = vocab.fingerprint();
  std::size_t replaced = 0;
  for (auto& c : out.comments) {
    for (auto& token : c.tokens) {
      if (!vocab.contains(token)) {
        token = Vocabulary::unk_surface();
        ++replaced;
      }
    }
  }
  if (replaced > 0) {
    out.provenance.notes.push_back("replaced " + std::to_string(replaced) +
                                   " out-of-vocabulary tokens");
  }
  return out;
}

Splits split(const Corpus& corpus, const SplitSpec& spec) {
  spec.validate();
  const bool all_positive = spec.train_fraction > 0 && spec.valid_fraction > 0 &&
                            spec.test_fraction > 0;
  if (all_positive && corpus.size() < 3) {
    throw DataError("split: corpus too small for three nonempty parts");
  }

  const std::size_t m = corpus.size();
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);

  const auto n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(m) * spec.train_fraction + 1e-9));
  const auto n_valid = static_cast<std::size_t>(
      std::floor(static_cast<double>(m) * spec.valid_fraction + 1e-9));

  std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> valid_idx(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                                     order.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid));
  std::vector<std::size_t> test_idx(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid),
                                    order.end());
  // Keep input order inside each part.
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(valid_idx.begin(), valid_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  const auto take = [&](const std::vector<std::size_t>& idx, const char* name) {
    Corpus part;
    part.provenance = corpus.provenance;
    part.provenance.notes.push_back(std::string(name) + " split, seed " +
                                    std::to_string(spec.seed));
    for (std::size_t i : idx) part.comments.push_back(corpus.comments[i]);
    return part;
  };
  return Splits{take(train_idx, "train"), take(valid_idx, "valid"),
                take(test_idx, "test")};
}

std::vector<TokenId> encode(const Comment& comment, const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(comment.tokens.size());
  for (const auto& token : comment.tokens) ids.push_back(vocab.encode(token));
  return ids;
}

std::vector<std::string> decode(const std::vector<TokenId>& ids, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (TokenId id : ids) tokens.push_back(vocab.surface(id));
  return tokens;
}

}  // namespace stylecast
