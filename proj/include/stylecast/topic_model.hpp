#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "stylecast/corpus.hpp"
#include "stylecast/vocabulary.hpp"

namespace stylecast {

struct TopicConfig {
  int k = 3;
  double alpha = 0.0;  // 0 means "use 5/k"
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 200;
  std::uint64_t seed = 0;

  static TopicConfig defaults(int k, std::uint64_t seed = 0);
  double resolved_alpha() const { return alpha > 0.0 ? alpha : 5.0 / k; }
  void validate() const;
};

// Latent topic model fit by collapsed Gibbs sampling. The word domain is
// the vocabulary's content tokens (reserved ids excluded); `dictionary`
// lists those surfaces in id order. phi rows are topic-word distributions
// over that domain, theta rows are comment-topic distributions. The raw
// count tables are kept so fold-in inference and serialization stay exact.
struct TopicModel {
  TopicConfig config;
  std::vector<std::string> dictionary;          // size D
  std::vector<std::vector<double>> phi;         // K x D, rows sum to 1
  std::vector<std::vector<double>> theta;       // M x K, rows sum to 1
  std::vector<std::vector<std::int64_t>> topic_word;    // K x D
  std::vector<std::int64_t> topic_total;                // K
  std::vector<std::vector<std::int64_t>> comment_topic; // M x K
  std::vector<std::int64_t> comment_total;              // M
  std::string vocab_fingerprint;

  int num_topics() const { return static_cast<int>(phi.size()); }
  int num_words() const { return static_cast<int>(dictionary.size()); }
  int num_comments() const { return static_cast<int>(theta.size()); }

  const std::vector<double>& topic_word_vector(int z) const;     // throws on bad z
  const std::vector<double>& comment_topic_vector(int m) const;  // throws on bad m

  // Deterministic fingerprint over config and counts; identifies a trained
  // model in downstream provenance.
  std::string fingerprint() const;

  nlohmann::json to_json() const;
  static TopicModel from_json(const nlohmann::json& j);
};

// Collapsed Gibbs sampling over the comment corpus. Unknown-token positions
// carry no style signal and are excluded from sampling. Identical inputs
// and seed give a bit-identical model.
TopicModel train_lda(const Corpus& corpus, const Vocabulary& vocab,
                     const TopicConfig& config);

// Fold-in inference for one unseen comment: phi-side counts stay fixed,
// only the local topic assignments resample. Deterministic given the seed.
std::vector<double> infer_theta(const TopicModel& model, const Comment& comment,
                                int sweeps, std::uint64_t seed);

// Relabels topics: result topic z is input topic perm[z]. Used to check
// that downstream quantities do not depend on topic labels.
TopicModel permute_topics(const TopicModel& model, const std::vector<int>& perm);

}  // namespace stylecast
