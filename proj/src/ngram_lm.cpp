#include "stylecast/ngram_lm.hpp"

#include <algorithm>

#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"

namespace stylecast {

void LmConfig::validate() const {
  if (order < 1) throw DataError("lm config: order must be >= 1");
  if (add_k <= 0.0) throw DataError("lm config: add_k must be > 0");
}

NgramCounts::NgramCounts(int order) : order_(order) {
  if (order < 1) throw DataError("ngram counts: order must be >= 1");
  tables_.resize(static_cast<std::size_t>(order));
  totals_.resize(static_cast<std::size_t>(order));
}

void NgramCounts::add_occurrence(const std::vector<TokenId>& context, TokenId token) {
  const int max_ctx = std::min<int>(order_ - 1, static_cast<int>(context.size()));
  for (int len = 0; len <= max_ctx; ++len) {
    std::vector<TokenId> ctx(context.end() - len, context.end());
    ++tables_[static_cast<std::size_t>(len)][ctx][token];
    ++totals_[static_cast<std::size_t>(len)][std::move(ctx)];
  }
}

void NgramCounts::add_comment(const std::vector<TokenId>& ids) {
  // (order-1) BOS in front, one EOS behind.
  std::vector<TokenId> padded(static_cast<std::size_t>(order_ - 1), Vocabulary::kBos);
  padded.insert(padded.end(), ids.begin(), ids.end());
  padded.push_back(Vocabulary::kEos);
  for (std::size_t pos = static_cast<std::size_t>(order_ - 1); pos < padded.size(); ++pos) {
    const std::vector<TokenId> context(padded.begin() + static_cast<std::ptrdiff_t>(pos) -
                                           (order_ - 1),
                                       padded.begin() + static_cast<std::ptrdiff_t>(pos));
    add_occurrence(context, padded[pos]);
  }
}

std::int64_t NgramCounts::count(const std::vector<TokenId>& context, TokenId token) const {
  if (static_cast<int>(context.size()) > order_ - 1) {
    throw DataError("ngram counts: context longer than order-1");
  }
  const auto& table = tables_[context.size()];
  const auto it = table.find(context);
  if (it == table.end()) return 0;
  const auto jt = it->second.find(token);
  return jt == it->second.end() ? 0 : jt->second;
}

std::int64_t NgramCounts::context_total(const std::vector<TokenId>& context) const {
  if (static_cast<int>(context.size()) > order_ - 1) {
    throw DataError("ngram counts: context longer than order-1");
  }
  const auto& totals = totals_[context.size()];
  const auto it = totals.find(context);
  return it == totals.end() ? 0 : it->second;
}

const std::map<TokenId, std::int64_t>* NgramCounts::context_row(
    const std::vector<TokenId>& context) const {
  if (static_cast<int>(context.size()) > order_ - 1) {
    throw DataError("ngram counts: context longer than order-1");
  }
  const auto& table = tables_[context.size()];
  const auto it = table.find(context);
  return it == table.end() ? nullptr : &it->second;
}

nlohmann::json NgramCounts::to_json() const {
  nlohmann::json orders = nlohmann::json::array();
  for (std::size_t len = 0; len < tables_.size(); ++len) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [context, row] : tables_[len]) {
      nlohmann::json tokens = nlohmann::json::array();
      for (const auto& [token, count] : row) {
        tokens.push_back(nlohmann::json::array({token, count}));
      }
      entries.push_back({{"context", context}, {"tokens", std::move(tokens)}});
    }
    orders.push_back({{"context_len", len}, {"entries", std::move(entries)}});
  }
  return nlohmann::json{{"order", order_}, {"orders", std::move(orders)}};
}

NgramCounts NgramCounts::from_json(const nlohmann::json& j) {
  NgramCounts counts(j.at("order").get<int>());
  for (const auto& jo : j.at("orders")) {
    const auto len = jo.at("context_len").get<std::size_t>();
    if (len >= counts.tables_.size()) throw DataError("ngram counts: bad context_len");
    for (const auto& je : jo.at("entries")) {
      auto context = je.at("context").get<std::vector<TokenId>>();
      if (context.size() != len) throw DataError("ngram counts: context length mismatch");
      auto& row = counts.tables_[len][context];
      std::int64_t total = 0;
      for (const auto& jt : je.at("tokens")) {
        const TokenId token = jt.at(0).get<TokenId>();
        const std::int64_t count = jt.at(1).get<std::int64_t>();
        row[token] = count;
        total += count;
      }
      counts.totals_[len][context] = total;
    }
  }
  return counts;
}

NgramLM::NgramLM(Vocabulary vocab, NgramCounts counts, LmConfig config)
    : vocab_(std::move(vocab)), counts_(std::move(counts)), config_(config) {}

NgramLM NgramLM::from_parts(Vocabulary vocab, NgramCounts counts, LmConfig config) {
  config.validate();
  if (counts.order() != config.order) {
    throw DataError("ngram lm: counts order does not match config");
  }
  return NgramLM(std::move(vocab), std::move(counts), config);
}

NgramLM NgramLM::train(const Corpus& corpus, const Vocabulary& vocab,
                       const LmConfig& config) {
  config.validate();
  if (corpus.empty()) throw DataError("train_lm: empty corpus");
  if (corpus.provenance.vocab_fingerprint &&
      *corpus.provenance.vocab_fingerprint != vocab.fingerprint()) {
    throw DataError("train_lm: corpus was filtered against a different vocabulary");
  }
  NgramCounts counts(config.order);
  for (const auto& comment : corpus.comments) {
    counts.add_comment(encode(comment, vocab));
  }
  return NgramLM(vocab, std::move(counts), config);
}

std::vector<double> NgramLM::next_token_dist(const std::vector<TokenId>& history) const {
  const TokenId n = vocab_.size();
  const double emission = static_cast<double>(n - 1);  // everything but BOS
  const double kappa = config_.add_k * emission;

  // BOS-pad the history so short prefixes still have full-length contexts.
  std::vector<TokenId> padded(static_cast<std::size_t>(config_.order - 1), Vocabulary::kBos);
  padded.insert(padded.end(), history.begin(), history.end());

  // Level 0: uniform over the emission domain. Each level folds the counts
  // of one more context token into the previous level's estimate.
  std::vector<double> prob(static_cast<std::size_t>(n), 1.0 / emission);
  prob[Vocabulary::kBos] = 0.0;

  for (int len = 0; len <= config_.order - 1; ++len) {
    const std::vector<TokenId> context(padded.end() - len, padded.end());
    const auto* row = counts_.context_row(context);
    const double denom = static_cast<double>(counts_.context_total(context)) + kappa;
    for (TokenId t = 0; t < n; ++t) {
      if (t == Vocabulary::kBos) continue;
      std::int64_t c = 0;
      if (row) {
        const auto it = row->find(t);
        if (it != row->end()) c = it->second;
      }
      const auto tt = static_cast<std::size_t>(t);
      prob[tt] = (static_cast<double>(c) + kappa * prob[tt]) / denom;
    }
  }
  return prob;
}

double NgramLM::mle_prob(const std::vector<TokenId>& context, TokenId token) const {
  const std::int64_t total = counts_.context_total(context);
  if (total == 0) return 0.0;
  return static_cast<double>(counts_.count(context, token)) / static_cast<double>(total);
}

nlohmann::json NgramLM::to_json() const {
  return nlohmann::json{
      {"format_version", kFormatVersion},
      {"config", {{"order", config_.order}, {"add_k", config_.add_k}, {"seed", config_.seed}}},
      {"vocab", vocab_.to_json()},
      {"counts", counts_.to_json()}};
}

NgramLM NgramLM::from_json(const nlohmann::json& j) {
  require_format_version(j, "ngram lm");
  try {
    LmConfig config;
    const auto& jc = j.at("config");
    config.order = jc.at("order").get<int>();
    config.add_k = jc.at("add_k").get<double>();
    config.seed = jc.value("seed", std::uint64_t{0});
    Vocabulary vocab = Vocabulary::from_json(j.at("vocab"));
    NgramCounts counts = NgramCounts::from_json(j.at("counts"));
    return from_parts(std::move(vocab), std::move(counts), config);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("ngram lm: ") + e.what());
  }
}

}  // namespace stylecast
