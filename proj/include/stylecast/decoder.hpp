#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stylecast/ngram_lm.hpp"
#include "stylecast/style_weight.hpp"

namespace stylecast {

struct FusionConfig {
  // Exponent on the style weight before the element-wise product; 1 is the
  // plain product, 0 turns styling off.
  double lambda = 1.0;
  // Post-product floor for supported tokens, so beam scores never hit
  // log(0) when a style weight underflows.
  double epsilon = 1e-12;

  void validate() const;  // lambda >= 0, epsilon > 0
};

struct BeamConfig {
  int width = 3;
  int max_len = 20;
  bool length_normalize = false;  // rank by score/length instead of score
  std::uint64_t seed = 0;         // reserved for sampling modes

  void validate() const;  // width >= 1, max_len >= 1
};

struct Hypothesis {
  std::vector<TokenId> tokens;  // emitted ids; ends with EOS when finished
  double log_score = 0.0;       // sum of ln p_fused per step
  bool finished = false;
};

// p[i] proportional to base[i] * sw.w[i]^lambda, floored at epsilon where
// base[i] > 0, renormalized. Tokens with zero base probability stay
// impossible. DataError on size mismatch.
std::vector<double> fuse(const std::vector<double>& base, const StyleWeight& sw,
                         const FusionConfig& cfg);

// Beam search from BOS over the fused distribution. Each step expands all
// live hypotheses over the full emission domain, keeps the global top
// `width` by score (ties: lexicographically smaller token sequence), and
// retires hypotheses that emitted EOS. Stops when nothing is live or
// max_len is reached; at most `width` hypotheses come back, best first.
// `sw` must be aligned to the LM vocabulary (or null for no styling).
std::vector<Hypothesis> beam_search(const NgramLM& lm, const StyleWeight* sw,
                                    const BeamConfig& bcfg, const FusionConfig& fcfg);

// Top-n beam outputs as detokenized strings. The style weight may be given
// over the content-word domain; it is aligned to the LM vocabulary first.
// DataError when the style weight belongs to a different vocabulary.
std::vector<std::string> generate(const NgramLM& lm,
                                  const std::optional<StyleWeight>& style,
                                  const BeamConfig& bcfg, const FusionConfig& fcfg,
                                  int n);

std::string detokenize_hypothesis(const Hypothesis& hyp, const Vocabulary& vocab);

}  // namespace stylecast
