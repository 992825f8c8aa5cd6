#include "stylecast/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "stylecast/errors.hpp"

namespace stylecast {

void FusionConfig::validate() const {
  if (lambda < 0.0) throw DataError("fusion config: lambda must be >= 0");
  if (epsilon <= 0.0) throw DataError("fusion config: epsilon must be > 0");
}

void BeamConfig::validate() const {
  if (width < 1) throw DataError("beam config: width must be >= 1");
  if (max_len < 1) throw DataError("beam config: max_len must be >= 1");
}

std::vector<double> fuse(const std::vector<double>& base, const StyleWeight& sw,
                         const FusionConfig& cfg) {
  cfg.validate();
  if (sw.w.size() != base.size()) {
    throw DataError("fuse: style weight has " + std::to_string(sw.w.size()) +
                    " entries, base distribution has " + std::to_string(base.size()));
  }
  std::vector<double> out(base.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    double p = 0.0;
    if (base[i] > 0.0) {
      double weight;
      if (cfg.lambda == 1.0) {
        weight = sw.w[i];
      } else if (cfg.lambda == 0.0) {
        weight = 1.0;
      } else {
        weight = std::pow(sw.w[i], cfg.lambda);
      }
      p = base[i] * weight;
      if (p < cfg.epsilon) p = cfg.epsilon;
    }
    out[i] = p;
    sum += p;
  }
  if (!(sum > 0.0)) throw DataError("fuse: base distribution has no support");
  for (double& v : out) v /= sum;
  return out;
}

namespace {

// Score used for ordering; raw log probability sum unless normalizing.
double rank_score(const Hypothesis& h, bool length_normalize) {
  if (length_normalize && !h.tokens.empty()) {
    return h.log_score / static_cast<double>(h.tokens.size());
  }
  return h.log_score;
}

// Higher score first; ties to the lexicographically smaller token sequence.
bool better(const Hypothesis& a, const Hypothesis& b, bool length_normalize) {
  const double sa = rank_score(a, length_normalize);
  const double sb = rank_score(b, length_normalize);
  if (sa != sb) return sa > sb;
  return std::lexicographical_compare(a.tokens.begin(), a.tokens.end(),
                                      b.tokens.begin(), b.tokens.end());
}

}  // namespace

std::vector<Hypothesis> beam_search(const NgramLM& lm, const StyleWeight* sw,
                                    const BeamConfig& bcfg, const FusionConfig& fcfg) {
  bcfg.validate();
  fcfg.validate();
  const TokenId n = lm.vocab().size();
  if (sw && sw->w.size() != static_cast<std::size_t>(n)) {
    throw DataError("beam_search: style weight is not aligned to the LM vocabulary");
  }

  const auto cmp = [&](const Hypothesis& a, const Hypothesis& b) {
    return better(a, b, bcfg.length_normalize);
  };

  std::vector<Hypothesis> live{Hypothesis{}};
  std::vector<Hypothesis> finished;

  for (int step = 0; step < bcfg.max_len && !live.empty(); ++step) {
    std::vector<Hypothesis> candidates;
    candidates.reserve(live.size() * static_cast<std::size_t>(n));
    for (const auto& hyp : live) {
      const std::vector<double> base = lm.next_token_dist(hyp.tokens);
      const std::vector<double> dist = sw ? fuse(base, *sw, fcfg) : base;
      for (TokenId t = 0; t < n; ++t) {
        const double p = dist[static_cast<std::size_t>(t)];
        if (p <= 0.0) continue;
        Hypothesis next;
        next.tokens = hyp.tokens;
        next.tokens.push_back(t);
        next.log_score = hyp.log_score + std::log(p);
        next.finished = (t == Vocabulary::kEos);
        candidates.push_back(std::move(next));
      }
    }
    std::sort(candidates.begin(), candidates.end(), cmp);
    if (candidates.size() > static_cast<std::size_t>(bcfg.width)) {
      candidates.resize(static_cast<std::size_t>(bcfg.width));
    }
    live.clear();
    for (auto& cand : candidates) {
      if (cand.finished) {
        finished.push_back(std::move(cand));
      } else {
        live.push_back(std::move(cand));
      }
    }
  }

  // Anything still live at max_len is returned unfinished.
  for (auto& hyp : live) finished.push_back(std::move(hyp));
  std::sort(finished.begin(), finished.end(), cmp);
  if (finished.size() > static_cast<std::size_t>(bcfg.width)) {
    finished.resize(static_cast<std::size_t>(bcfg.width));
  }
  return finished;
}

std::string detokenize_hypothesis(const Hypothesis& hyp, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(hyp.tokens.size());
  for (TokenId id : hyp.tokens) {
    if (id == Vocabulary::kBos || id == Vocabulary::kEos) continue;
    tokens.push_back(vocab.surface(id));
  }
  return detokenize(tokens);
}

std::vector<std::string> generate(const NgramLM& lm,
                                  const std::optional<StyleWeight>& style,
                                  const BeamConfig& bcfg, const FusionConfig& fcfg,
                                  int n) {
  if (n < 1) throw DataError("generate: n must be >= 1");

  std::optional<StyleWeight> aligned;
  if (style) {
    if (style->vocab_fingerprint != lm.vocab().fingerprint()) {
      throw DataError("generate: style weight and language model were built "
                      "from different vocabularies");
    }
    if (style->w.size() == static_cast<std::size_t>(lm.vocab().size())) {
      aligned = *style;  // already aligned
    } else {
      aligned = align_to_vocab(*style, lm.vocab(), lm.vocab());
    }
  }

  const auto hyps = beam_search(lm, aligned ? &*aligned : nullptr, bcfg, fcfg);
  std::vector<std::string> out;
  const std::size_t take = std::min(static_cast<std::size_t>(n), hyps.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back(detokenize_hypothesis(hyps[i], lm.vocab()));
  }
  return out;
}

}  // namespace stylecast
