#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "stylecast/corpus.hpp"
#include "stylecast/vocabulary.hpp"

namespace stylecast {

struct LmConfig {
  int order = 3;
  double add_k = 0.1;
  std::uint64_t seed = 0;  // unused; kept for API symmetry with the trainers

  void validate() const;  // order >= 1, add_k > 0
};

// Exact n-gram occurrence counts for orders 1..order. Contexts are token-id
// sequences of length order-1 or shorter; sequences get (order-1) BOS
// padding in front and one EOS behind. Kept separate from the model so a
// single occurrence can be added in tests and the model stays immutable.
class NgramCounts {
 public:
  explicit NgramCounts(int order);

  // Counts every n-gram ending at each position of BOS-padded ids + EOS.
  void add_comment(const std::vector<TokenId>& ids);

  // One occurrence of (context, token): increments the tables for the
  // context's suffixes of every order up to the configured one.
  void add_occurrence(const std::vector<TokenId>& context, TokenId token);

  std::int64_t count(const std::vector<TokenId>& context, TokenId token) const;
  std::int64_t context_total(const std::vector<TokenId>& context) const;
  // Token counts for one context, nullptr when the context was never seen.
  const std::map<TokenId, std::int64_t>* context_row(const std::vector<TokenId>& context) const;

  int order() const { return order_; }

  nlohmann::json to_json() const;
  static NgramCounts from_json(const nlohmann::json& j);

 private:
  int order_;
  // Index = context length (0..order-1). std::map keeps serialization and
  // iteration deterministic.
  std::vector<std::map<std::vector<TokenId>, std::map<TokenId, std::int64_t>>> tables_;
  std::vector<std::map<std::vector<TokenId>, std::int64_t>> totals_;
};

// Interpolated add-k n-gram model over a fixed vocabulary. Supplies the
// base next-token distribution consumed by the fusion step of the decoder.
// The emission domain is every token except BOS; all emission entries are
// strictly positive.
class NgramLM {
 public:
  static NgramLM train(const Corpus& corpus, const Vocabulary& vocab,
                       const LmConfig& config);
  static NgramLM from_parts(Vocabulary vocab, NgramCounts counts, LmConfig config);

  // P(token | history), recursively smoothed from the unigram level up,
  // using the longest stored context suffix. history holds preceding token
  // ids without BOS padding. Entry kBos is exactly 0; the rest sum to 1.
  std::vector<double> next_token_dist(const std::vector<TokenId>& history) const;

  // Raw count ratio at order |context|+1; 0 for unseen contexts.
  double mle_prob(const std::vector<TokenId>& context, TokenId token) const;

  const Vocabulary& vocab() const { return vocab_; }
  const NgramCounts& counts() const { return counts_; }
  const LmConfig& config() const { return config_; }

  nlohmann::json to_json() const;
  static NgramLM from_json(const nlohmann::json& j);

 private:
  NgramLM(Vocabulary vocab, NgramCounts counts, LmConfig config);

  Vocabulary vocab_;
  NgramCounts counts_;
  LmConfig config_;
};

}  // namespace stylecast
