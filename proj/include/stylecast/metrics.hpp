#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "stylecast/corpus.hpp"
#include "stylecast/pos_tagger.hpp"

namespace stylecast {

// Add-one smoothing over an aligned count vector: p[i] = (c[i]+1)/sum(c+1).
std::vector<double> add_one_distribution(const std::vector<std::int64_t>& counts);

// KL(p || q), natural log. Inputs must be equal-length distributions with
// q strictly positive.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Unique-token counts per corpus.
std::map<std::string, std::int64_t> token_counts(const Corpus& corpus);

// Ratio of unique tokens: generated over reference. DataError when the
// reference has no tokens. May exceed 1.
double dic_rate(const Corpus& reference, const Corpus& generated);

// KL divergence between add-one smoothed word-frequency distributions,
// reference against generated, over the union of both corpora's unique
// tokens. Natural log.
double wf_kl(const Corpus& reference, const Corpus& generated);

// Same shape over the fixed tag inventory.
double pos_kl(const std::vector<TaggedSentence>& reference,
              const std::vector<TaggedSentence>& generated);

// Corpus-level BLEU with uniform 1..4-gram weights, clipped counts, and
// the standard brevity penalty (closest reference length, ties to the
// shorter). refs[i] lists the reference token sequences for generated[i].
double bleu4(const std::vector<std::vector<std::string>>& generated,
             const std::vector<std::vector<std::vector<std::string>>>& refs);

struct DiversityReport {
  double dic_rate = 0.0;
  double wf_kl = 0.0;
  double pos_kl = 0.0;
  double bleu4 = 0.0;
  std::int64_t n_t = 0;  // unique tokens in the reference
  std::int64_t n_g = 0;  // unique tokens in the generated corpus
  std::int64_t word_domain_size = 0;
  std::int64_t tag_domain_size = kTagCount;
  std::map<std::string, std::string> provenance;

  nlohmann::json to_json() const;
  static DiversityReport from_json(const nlohmann::json& j);
};

// All four measures over one (reference, generated) pair with shared
// tokenization and tagging. Pass tag streams to substitute an external
// tagger; otherwise both corpora go through `tagger`.
DiversityReport report(const Corpus& reference, const Corpus& generated,
                       const PosTagger& tagger,
                       const std::vector<std::vector<std::vector<std::string>>>& refs_for_bleu,
                       const std::vector<TaggedSentence>* reference_tags = nullptr,
                       const std::vector<TaggedSentence>* generated_tags = nullptr);

}  // namespace stylecast
