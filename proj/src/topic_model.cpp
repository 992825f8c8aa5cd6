#include "stylecast/topic_model.hpp"

#include <stdexcept>
#include <unordered_map>

#include "stylecast/errors.hpp"
#include "stylecast/hash.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/rng.hpp"

namespace stylecast {

TopicConfig TopicConfig::defaults(int k, std::uint64_t seed) {
  TopicConfig cfg;
  cfg.k = k;
  cfg.alpha = 5.0 / k;
  cfg.beta = 0.01;
  cfg.iterations = 1000;
  cfg.burn_in = 200;
  cfg.seed = seed;
  return cfg;
}

void TopicConfig::validate() const {
  if (k < 1) throw DataError("topic config: k must be >= 1");
  if (resolved_alpha() <= 0.0) throw DataError("topic config: alpha must be > 0");
  if (beta <= 0.0) throw DataError("topic config: beta must be > 0");
  if (iterations < 1) throw DataError("topic config: iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) {
    throw DataError("topic config: burn_in must be < iterations");
  }
}

const std::vector<double>& TopicModel::topic_word_vector(int z) const {
  if (z < 0 || z >= num_topics()) {
    throw std::out_of_range("topic index out of range: " + std::to_string(z));
  }
  return phi[static_cast<std::size_t>(z)];
}

const std::vector<double>& TopicModel::comment_topic_vector(int m) const {
  if (m < 0 || m >= num_comments()) {
    throw std::out_of_range("comment index out of range: " + std::to_string(m));
  }
  return theta[static_cast<std::size_t>(m)];
}

std::string TopicModel::fingerprint() const {
  Fnv1a64 h;
  h.update(vocab_fingerprint);
  h.update_u64(static_cast<std::uint64_t>(config.k));
  h.update_u64(static_cast<std::uint64_t>(config.iterations));
  h.update_u64(config.seed);
  for (const auto& row : topic_word) {
    for (std::int64_t c : row) h.update_u64(static_cast<std::uint64_t>(c));
  }
  return h.hex();
}

namespace {

// Encodes comments into dense word-domain indexes (vocab id - kFirstWord),
// dropping reserved tokens; unknowns carry no style signal.
std::vector<std::vector<int>> to_docs(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<std::vector<int>> docs;
  docs.reserve(corpus.size());
  for (const auto& comment : corpus.comments) {
    std::vector<int> doc;
    doc.reserve(comment.tokens.size());
    for (const auto& token : comment.tokens) {
      const TokenId id = vocab.encode(token);
      if (id >= Vocabulary::kFirstWord) doc.push_back(id - Vocabulary::kFirstWord);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace

TopicModel train_lda(const Corpus& corpus, const Vocabulary& vocab,
                     const TopicConfig& config) {
  config.validate();
  if (corpus.empty()) throw DataError("train_lda: empty corpus");
  if (corpus.provenance.vocab_fingerprint &&
      *corpus.provenance.vocab_fingerprint != vocab.fingerprint()) {
    throw DataError("train_lda: corpus was filtered against a different vocabulary");
  }
  const int num_words = vocab.word_count();
  if (num_words < 1) throw DataError("train_lda: vocabulary has no content tokens");

  const int k = config.k;
  const double alpha = config.resolved_alpha();
  const double beta = config.beta;
  const double beta_sum = beta * num_words;
  const std::size_t m = corpus.size();

  const auto docs = to_docs(corpus, vocab);

  std::vector<std::vector<std::int64_t>> topic_word(
      static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(num_words), 0));
  std::vector<std::int64_t> topic_total(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<std::int64_t>> comment_topic(
      m, std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  std::vector<std::int64_t> comment_total(m, 0);
  std::vector<std::vector<int>> assignment(m);

  Rng rng(config.seed);

  // Random initial assignments.
  for (std::size_t d = 0; d < m; ++d) {
    assignment[d].resize(docs[d].size());
    for (std::size_t pos = 0; pos < docs[d].size(); ++pos) {
      const int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
      assignment[d][pos] = z;
      const int w = docs[d][pos];
      ++topic_word[static_cast<std::size_t>(z)][static_cast<std::size_t>(w)];
      ++topic_total[static_cast<std::size_t>(z)];
      ++comment_topic[d][static_cast<std::size_t>(z)];
      ++comment_total[d];
    }
  }

  // Collapsed Gibbs sweeps. Comments in corpus order, tokens in position
  // order, so runs are reproducible.
  std::vector<double> cumulative(static_cast<std::size_t>(k));
  for (int it = 0; it < config.iterations; ++it) {
    for (std::size_t d = 0; d < m; ++d) {
      for (std::size_t pos = 0; pos < docs[d].size(); ++pos) {
        const int w = docs[d][pos];
        const int old_z = assignment[d][pos];
        --topic_word[static_cast<std::size_t>(old_z)][static_cast<std::size_t>(w)];
        --topic_total[static_cast<std::size_t>(old_z)];
        --comment_topic[d][static_cast<std::size_t>(old_z)];

        double total = 0.0;
        for (int z = 0; z < k; ++z) {
          const auto zz = static_cast<std::size_t>(z);
          const double p =
              (static_cast<double>(topic_word[zz][static_cast<std::size_t>(w)]) + beta) /
              (static_cast<double>(topic_total[zz]) + beta_sum) *
              (static_cast<double>(comment_topic[d][zz]) + alpha);
          total += p;
          cumulative[zz] = total;
        }
        const double r = rng.uniform01() * total;
        int new_z = 0;
        while (new_z < k - 1 && r >= cumulative[static_cast<std::size_t>(new_z)]) {
          ++new_z;
        }

        assignment[d][pos] = new_z;
        ++topic_word[static_cast<std::size_t>(new_z)][static_cast<std::size_t>(w)];
        ++topic_total[static_cast<std::size_t>(new_z)];
        ++comment_topic[d][static_cast<std::size_t>(new_z)];
      }
    }
  }

  TopicModel model;
  model.config = config;
  model.config.alpha = alpha;  // store the resolved value
  model.vocab_fingerprint = vocab.fingerprint();
  model.dictionary.reserve(static_cast<std::size_t>(num_words));
  for (TokenId id = Vocabulary::kFirstWord; id < vocab.size(); ++id) {
    model.dictionary.push_back(vocab.surface(id));
  }

  // Point estimates from the final count state.
  model.phi.assign(static_cast<std::size_t>(k),
                   std::vector<double>(static_cast<std::size_t>(num_words), 0.0));
  for (int z = 0; z < k; ++z) {
    const auto zz = static_cast<std::size_t>(z);
    const double denom = static_cast<double>(topic_total[zz]) + beta_sum;
    for (int w = 0; w < num_words; ++w) {
      model.phi[zz][static_cast<std::size_t>(w)] =
          (static_cast<double>(topic_word[zz][static_cast<std::size_t>(w)]) + beta) / denom;
    }
  }
  model.theta.assign(m, std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (std::size_t d = 0; d < m; ++d) {
    const double denom = static_cast<double>(comment_total[d]) + alpha * k;
    for (int z = 0; z < k; ++z) {
      model.theta[d][static_cast<std::size_t>(z)] =
          (static_cast<double>(comment_topic[d][static_cast<std::size_t>(z)]) + alpha) / denom;
    }
  }
  model.topic_word = std::move(topic_word);
  model.topic_total = std::move(topic_total);
  model.comment_topic = std::move(comment_topic);
  model.comment_total = std::move(comment_total);
  return model;
}

std::vector<double> infer_theta(const TopicModel& model, const Comment& comment,
                                int sweeps, std::uint64_t seed) {
  if (sweeps < 1) throw DataError("infer_theta: sweeps must be >= 1");
  const int k = model.num_topics();

  std::unordered_map<std::string, int> word_index;
  word_index.reserve(model.dictionary.size());
  for (std::size_t i = 0; i < model.dictionary.size(); ++i) {
    word_index.emplace(model.dictionary[i], static_cast<int>(i));
  }
  std::vector<int> doc;
  for (const auto& token : comment.tokens) {
    const auto it = word_index.find(token);
    if (it != word_index.end()) doc.push_back(it->second);
  }
  if (doc.empty()) {
    throw DataError("infer_theta: comment has no in-vocabulary tokens");
  }

  const double alpha = model.config.resolved_alpha();
  Rng rng(seed);
  std::vector<int> assignment(doc.size());
  std::vector<std::int64_t> local(static_cast<std::size_t>(k), 0);
  for (std::size_t pos = 0; pos < doc.size(); ++pos) {
    const int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    assignment[pos] = z;
    ++local[static_cast<std::size_t>(z)];
  }

  // Fold-in: the trained phi stays fixed, only local assignments move.
  std::vector<double> cumulative(static_cast<std::size_t>(k));
  for (int it = 0; it < sweeps; ++it) {
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
      const int w = doc[pos];
      const int old_z = assignment[pos];
      --local[static_cast<std::size_t>(old_z)];
      double total = 0.0;
      for (int z = 0; z < k; ++z) {
        const auto zz = static_cast<std::size_t>(z);
        const double p = model.phi[zz][static_cast<std::size_t>(w)] *
                         (static_cast<double>(local[zz]) + alpha);
        total += p;
        cumulative[zz] = total;
      }
      const double r = rng.uniform01() * total;
      int new_z = 0;
      while (new_z < k - 1 && r >= cumulative[static_cast<std::size_t>(new_z)]) {
        ++new_z;
      }
      assignment[pos] = new_z;
      ++local[static_cast<std::size_t>(new_z)];
    }
  }

  std::vector<double> theta(static_cast<std::size_t>(k));
  const double denom = static_cast<double>(doc.size()) + alpha * k;
  for (int z = 0; z < k; ++z) {
    theta[static_cast<std::size_t>(z)] =
        (static_cast<double>(local[static_cast<std::size_t>(z)]) + alpha) / denom;
  }
  return theta;
}

TopicModel permute_topics(const TopicModel& model, const std::vector<int>& perm) {
  const int k = model.num_topics();
  if (static_cast<int>(perm.size()) != k) {
    throw DataError("permute_topics: permutation size mismatch");
  }
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[static_cast<std::size_t>(p)]) {
      throw DataError("permute_topics: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  TopicModel out = model;
  for (int z = 0; z < k; ++z) {
    const auto zz = static_cast<std::size_t>(z);
    const auto src = static_cast<std::size_t>(perm[zz]);
    out.phi[zz] = model.phi[src];
    out.topic_word[zz] = model.topic_word[src];
    out.topic_total[zz] = model.topic_total[src];
  }
  for (std::size_t d = 0; d < model.theta.size(); ++d) {
    for (int z = 0; z < k; ++z) {
      const auto zz = static_cast<std::size_t>(z);
      const auto src = static_cast<std::size_t>(perm[zz]);
      out.theta[d][zz] = model.theta[d][src];
      out.comment_topic[d][zz] = model.comment_topic[d][src];
    }
  }
  return out;
}

nlohmann::json TopicModel::to_json() const {
  return nlohmann::json{
      {"format_version", kFormatVersion},
      {"config",
       {{"k", config.k},
        {"alpha", config.alpha},
        {"beta", config.beta},
        {"iterations", config.iterations},
        {"burn_in", config.burn_in},
        {"seed", config.seed}}},
      {"dictionary", dictionary},
      {"phi", phi},
      {"theta", theta},
      {"counts",
       {{"topic_word", topic_word},
        {"topic_total", topic_total},
        {"comment_topic", comment_topic},
        {"comment_total", comment_total}}},
      {"vocab_fingerprint", vocab_fingerprint}};
}

TopicModel TopicModel::from_json(const nlohmann::json& j) {
  require_format_version(j, "topic model");
  TopicModel model;
  try {
    const auto& jc = j.at("config");
    model.config.k = jc.at("k").get<int>();
    model.config.alpha = jc.at("alpha").get<double>();
    model.config.beta = jc.at("beta").get<double>();
    model.config.iterations = jc.at("iterations").get<int>();
    model.config.burn_in = jc.at("burn_in").get<int>();
    model.config.seed = jc.at("seed").get<std::uint64_t>();
    model.dictionary = j.at("dictionary").get<std::vector<std::string>>();
    model.phi = j.at("phi").get<std::vector<std::vector<double>>>();
    model.theta = j.at("theta").get<std::vector<std::vector<double>>>();
    const auto& counts = j.at("counts");
    model.topic_word = counts.at("topic_word").get<std::vector<std::vector<std::int64_t>>>();
    model.topic_total = counts.at("topic_total").get<std::vector<std::int64_t>>();
    model.comment_topic = counts.at("comment_topic").get<std::vector<std::vector<std::int64_t>>>();
    model.comment_total = counts.at("comment_total").get<std::vector<std::int64_t>>();
    model.vocab_fingerprint = j.at("vocab_fingerprint").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("topic model: ") + e.what());
  }
  if (model.phi.size() != static_cast<std::size_t>(model.config.k) ||
      model.topic_word.size() != model.phi.size() ||
      model.theta.size() != model.comment_topic.size()) {
    throw DataError("topic model: inconsistent matrix shapes");
  }
  for (const auto& row : model.phi) {
    if (row.size() != model.dictionary.size()) {
      throw DataError("topic model: phi width does not match dictionary");
    }
  }
  return model;
}

}  // namespace stylecast
