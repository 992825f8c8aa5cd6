#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stylecast/tokenizer.hpp"
#include "stylecast/vocabulary.hpp"

namespace stylecast {

struct Comment {
  std::vector<std::string> tokens;
  std::string source_id;
  std::map<std::string, std::string> meta;
};

// Records where a corpus came from and which filters were applied to it.
struct Provenance {
  std::string source;
  std::optional<int> min_freq;
  std::optional<int> max_len;
  std::optional<std::string> vocab_fingerprint;
  std::vector<std::string> notes;
};

struct Corpus {
  std::vector<Comment> comments;
  Provenance provenance;

  std::size_t size() const { return comments.size(); }
  bool empty() const { return comments.empty(); }
};

struct SplitSpec {
  double train_fraction = 0.8;
  double valid_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;

  void validate() const;  // fractions >= 0 and summing to 1
};

struct Splits {
  Corpus train;
  Corpus valid;
  Corpus test;
};

// Ingestion. JSON Lines: one {"id":…, "text":…, "meta":{…}} object per
// line. Plain text: one comment per line, ids are 1-based line numbers.
// Comments that tokenize to nothing are skipped.
Corpus ingest_jsonl(const std::filesystem::path& path, const Tokenizer& tok);
Corpus ingest_plain(const std::filesystem::path& path, const Tokenizer& tok);
// Sniffs the format: corpus artifact JSON, JSON Lines, or plain text.
Corpus load_corpus_any(const std::filesystem::path& path, const Tokenizer& tok);

// Corpus artifact (versioned JSON) round-trip.
nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

// Tokens occurring fewer than min_freq times are left out; the reserved
// tokens are always present.
Vocabulary build_vocabulary(const Corpus& corpus, int min_freq = 5);

// Drops comments longer than max_len; replaces out-of-vocabulary tokens
// with the unknown-token surface. May return an empty corpus.
Corpus filter_corpus(const Corpus& corpus, int max_len, const Vocabulary& vocab);

// Length filter alone (used before a vocabulary exists).
Corpus drop_long_comments(const Corpus& corpus, int max_len);

// Deterministic partition: shuffle indices with the seeded generator, cut
// by fraction, then restore input order inside each part.
Splits split(const Corpus& corpus, const SplitSpec& spec);

std::vector<TokenId> encode(const Comment& comment, const Vocabulary& vocab);
std::vector<std::string> decode(const std::vector<TokenId>& ids, const Vocabulary& vocab);

}  // namespace stylecast
