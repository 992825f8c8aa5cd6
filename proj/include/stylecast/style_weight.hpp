#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stylecast/topic_model.hpp"
#include "stylecast/vocabulary.hpp"

namespace stylecast {

// One vote per comment: the topic with the highest theta entry, ties going
// to the lowest topic index.
struct TopicVote {
  int k = 0;
  std::vector<int> winners;  // per comment

  // M x K 0/1 matrix view, one 1 per row.
  std::vector<std::vector<int>> indicator() const;
};

struct CorpusTopicDistribution {
  std::vector<double> y;  // length K, sums to 1
};

// Nonnegative weights over a token domain, summing to 1. Fresh from
// compute_style_weight the domain is the topic model's dictionary; after
// align_to_vocab it is a full vocabulary's token list.
struct StyleWeight {
  std::vector<std::string> domain;
  std::vector<double> w;
  std::string vocab_fingerprint;
  // Provenance.
  int source_topics = 0;
  std::vector<double> y;
  std::string model_fingerprint;

  nlohmann::json to_json() const;
  static StyleWeight from_json(const nlohmann::json& j);
};

// Argmax voting over theta rows; y is the vote share per topic.
TopicVote vote_rows(const std::vector<std::vector<double>>& theta);
std::pair<TopicVote, CorpusTopicDistribution> vote_topics(const TopicModel& model);

// w = sum_k y[k] * phi[k], over the model's dictionary.
StyleWeight compute_style_weight(const TopicModel& model);

// Reindexes a style weight onto `target`'s full token list. Surfaces in the
// source domain keep their weight; everything else - including the reserved
// tokens - gets the mean of the mapped weights, so unmatched tokens are
// neither boosted nor suppressed against each other. Renormalized.
// DataError when no surface overlaps or the fingerprint doesn't match
// `source`.
StyleWeight align_to_vocab(const StyleWeight& sw, const Vocabulary& source,
                           const Vocabulary& target);

}  // namespace stylecast
