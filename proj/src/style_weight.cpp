#include "stylecast/style_weight.hpp"

#include <unordered_map>

#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"

namespace stylecast {

std::vector<std::vector<int>> TopicVote::indicator() const {
  std::vector<std::vector<int>> t(winners.size(),
                                  std::vector<int>(static_cast<std::size_t>(k), 0));
  for (std::size_t m = 0; m < winners.size(); ++m) {
    t[m][static_cast<std::size_t>(winners[m])] = 1;
  }
  return t;
}

TopicVote vote_rows(const std::vector<std::vector<double>>& theta) {
  if (theta.empty()) throw DataError("vote_rows: no rows");
  TopicVote vote;
  vote.k = static_cast<int>(theta.front().size());
  vote.winners.reserve(theta.size());
  for (const auto& row : theta) {
    if (row.size() != static_cast<std::size_t>(vote.k)) {
      throw DataError("vote_rows: ragged theta");
    }
    // Ties go to the lowest topic index.
    int best = 0;
    for (int z = 1; z < vote.k; ++z) {
      if (row[static_cast<std::size_t>(z)] > row[static_cast<std::size_t>(best)]) best = z;
    }
    vote.winners.push_back(best);
  }
  return vote;
}

std::pair<TopicVote, CorpusTopicDistribution> vote_topics(const TopicModel& model) {
  TopicVote vote = vote_rows(model.theta);
  CorpusTopicDistribution dist;
  dist.y.assign(static_cast<std::size_t>(vote.k), 0.0);
  for (int w : vote.winners) dist.y[static_cast<std::size_t>(w)] += 1.0;
  for (double& v : dist.y) v /= static_cast<double>(vote.winners.size());
  return {std::move(vote), std::move(dist)};
}

StyleWeight compute_style_weight(const TopicModel& model) {
  const auto [vote, dist] = vote_topics(model);
  StyleWeight sw;
  sw.domain = model.dictionary;
  sw.w.assign(model.dictionary.size(), 0.0);
  for (int z = 0; z < model.num_topics(); ++z) {
    const auto zz = static_cast<std::size_t>(z);
    const double yk = dist.y[zz];
    if (yk == 0.0) continue;
    const auto& row = model.phi[zz];
    for (std::size_t w = 0; w < sw.w.size(); ++w) sw.w[w] += yk * row[w];
  }
  sw.vocab_fingerprint = model.vocab_fingerprint;
  sw.source_topics = model.num_topics();
  sw.y = dist.y;
  sw.model_fingerprint = model.fingerprint();
  return sw;
}

StyleWeight align_to_vocab(const StyleWeight& sw, const Vocabulary& source,
                           const Vocabulary& target) {
  if (sw.vocab_fingerprint != source.fingerprint()) {
    throw DataError("align_to_vocab: style weight does not belong to the source vocabulary");
  }
  if (sw.domain.size() != sw.w.size()) {
    throw DataError("align_to_vocab: malformed style weight");
  }
  std::unordered_map<std::string, std::size_t> by_surface;
  by_surface.reserve(sw.domain.size());
  for (std::size_t i = 0; i < sw.domain.size(); ++i) by_surface.emplace(sw.domain[i], i);

  const TokenId n = target.size();
  std::vector<double> mapped(static_cast<std::size_t>(n), -1.0);
  double mapped_sum = 0.0;
  std::size_t mapped_count = 0;
  for (TokenId id = 0; id < n; ++id) {
    const auto it = by_surface.find(target.surface(id));
    if (it != by_surface.end()) {
      mapped[static_cast<std::size_t>(id)] = sw.w[it->second];
      mapped_sum += sw.w[it->second];
      ++mapped_count;
    }
  }
  if (mapped_count == 0) {
    throw DataError("align_to_vocab: vocabularies share no tokens");
  }

  // Unmatched tokens (reserved ones included) get the mean mapped weight, a
  // style-neutral fill that keeps their relative base-model ordering.
  const double fill = mapped_sum / static_cast<double>(mapped_count);
  StyleWeight out;
  out.domain = target.tokens();
  out.w.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (std::size_t i = 0; i < out.w.size(); ++i) {
    out.w[i] = mapped[i] >= 0.0 ? mapped[i] : fill;
    total += out.w[i];
  }
  for (double& v : out.w) v /= total;
  out.vocab_fingerprint = target.fingerprint();
  out.source_topics = sw.source_topics;
  out.y = sw.y;
  out.model_fingerprint = sw.model_fingerprint;
  return out;
}

nlohmann::json StyleWeight::to_json() const {
  return nlohmann::json{{"format_version", kFormatVersion},
                        {"domain", domain},
                        {"w", w},
                        {"y", y},
                        {"k", source_topics},
                        {"vocab_fingerprint", vocab_fingerprint},
                        {"model_fingerprint", model_fingerprint}};
}

StyleWeight StyleWeight::from_json(const nlohmann::json& j) {
  require_format_version(j, "style weight");
  StyleWeight sw;
  try {
    sw.domain = j.at("domain").get<std::vector<std::string>>();
    sw.w = j.at("w").get<std::vector<double>>();
    sw.y = j.at("y").get<std::vector<double>>();
    sw.source_topics = j.at("k").get<int>();
    sw.vocab_fingerprint = j.at("vocab_fingerprint").get<std::string>();
    sw.model_fingerprint = j.value("model_fingerprint", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("style weight: ") + e.what());
  }
  if (sw.domain.size() != sw.w.size()) {
    throw DataError("style weight: domain/w length mismatch");
  }
  return sw;
}

}  // namespace stylecast
