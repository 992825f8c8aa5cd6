#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stylecast/corpus.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/ngram_lm.hpp"
#include "stylecast/rng.hpp"
#include "test_util.hpp"

using namespace stylecast;
using testutil::corpus_from_tokens;

namespace {

LmConfig lm_config(int order, double add_k) {
  LmConfig cfg;
  cfg.order = order;
  cfg.add_k = add_k;
  return cfg;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("training stores the exact n-gram counts") {
  const auto corpus = corpus_from_tokens({{"a", "b"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(2, 0.1));
  const TokenId a = *vocab.id_of("a");
  const TokenId b = *vocab.id_of("b");
  CHECK(lm.counts().count({Vocabulary::kBos}, a) == 1);
  CHECK(lm.counts().count({a}, b) == 1);
  CHECK(lm.counts().count({b}, Vocabulary::kEos) == 1);
  CHECK(lm.counts().count({a}, a) == 0);
  // Unigram stream: a, b, EOS.
  CHECK(lm.counts().count({}, a) == 1);
  CHECK(lm.counts().context_total({}) == 3);
}

TEST_CASE("raw conditional estimates match hand counts") {
  const auto corpus = corpus_from_tokens({{"a", "b"}, {"a", "c"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(2, 0.1));
  const TokenId a = *vocab.id_of("a");
  const TokenId b = *vocab.id_of("b");
  CHECK(lm.mle_prob({a}, b) == 0.5);  // 1 of 2 continuations
  CHECK(lm.mle_prob({b}, a) == 0.0);  // b only precedes EOS
  CHECK(lm.mle_prob({*vocab.id_of("c")}, Vocabulary::kEos) == 1.0);
}

TEST_CASE("smoothed estimate approaches the count ratio as k vanishes") {
  const auto corpus = corpus_from_tokens({{"a", "b", "a", "b"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(2, 1e-9));
  const TokenId a = *vocab.id_of("a");
  const TokenId b = *vocab.id_of("b");
  const auto dist = lm.next_token_dist({a});
  CHECK(dist[static_cast<std::size_t>(b)] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("duplicating the corpus scales counts without moving estimates") {
  const std::vector<std::vector<std::string>> comments = {{"a", "b", "c"}, {"b", "c"}};
  auto doubled = comments;
  doubled.insert(doubled.end(), comments.begin(), comments.end());
  const auto corpus1 = corpus_from_tokens(comments);
  const auto corpus2 = corpus_from_tokens(doubled);
  const auto vocab = build_vocabulary(corpus1, 1);

  const auto counts1 = NgramLM::train(corpus1, vocab, lm_config(2, 0.1)).counts();
  const auto counts2 = NgramLM::train(corpus2, vocab, lm_config(2, 0.1)).counts();
  const TokenId b = *vocab.id_of("b");
  const TokenId c = *vocab.id_of("c");
  CHECK(counts2.count({b}, c) == 2 * counts1.count({b}, c));
  CHECK(counts2.context_total({}) == 2 * counts1.context_total({}));

  // Relative frequencies are scale-free, so in the small-k limit the
  // distributions agree everywhere.
  const auto lm1 = NgramLM::train(corpus1, vocab, lm_config(2, 1e-9));
  const auto lm2 = NgramLM::train(corpus2, vocab, lm_config(2, 1e-9));
  for (const std::vector<TokenId> history : {std::vector<TokenId>{}, {b}, {c}}) {
    const auto d1 = lm1.next_token_dist(history);
    const auto d2 = lm2.next_token_dist(history);
    for (std::size_t i = 0; i < d1.size(); ++i) {
      CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("distributions have full support over the emission domain") {
  const auto corpus = corpus_from_tokens({{"a", "b", "c"}, {"c", "a"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(3, 0.1));

  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<TokenId> history;
    const int len = static_cast<int>(rng.below(4));
    for (int i = 0; i < len; ++i) {
      history.push_back(static_cast<TokenId>(
          1 + rng.below(static_cast<std::uint64_t>(vocab.size() - 1))));
    }
    const auto dist = lm.next_token_dist(history);
    CHECK(dist[Vocabulary::kBos] == 0.0);
    CHECK(sum(dist) == doctest::Approx(1.0).epsilon(1e-9));
    for (TokenId t = 1; t < vocab.size(); ++t) {
      CHECK(dist[static_cast<std::size_t>(t)] > 0.0);
    }
  }
}

TEST_CASE("unseen contexts back off to the smoothed unigram") {
  const auto corpus = corpus_from_tokens({{"a", "b"}, {"b", "a"}, {"c", "c"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(3, 0.1));

  // (eos, eos) as a context never occurs in training.
  const std::vector<TokenId> unseen{Vocabulary::kEos, Vocabulary::kEos};
  const auto backed_off = lm.next_token_dist(unseen);

  // Oracle: the add-k unigram, built from raw counts right here.
  const double emission = static_cast<double>(vocab.size() - 1);
  const double kappa = 0.1 * emission;
  const double total = static_cast<double>(lm.counts().context_total({}));
  for (TokenId t = 1; t < vocab.size(); ++t) {
    const double unigram =
        (static_cast<double>(lm.counts().count({}, t)) + 0.1) / (total + kappa);
    CHECK(backed_off[static_cast<std::size_t>(t)] ==
          doctest::Approx(unigram).epsilon(1e-12));
  }
}

TEST_CASE("adding an occurrence never lowers that conditional") {
  const auto base_corpus = corpus_from_tokens(
      {{"t", "t", "t"}, {"c", "t"}, {"t", "u"}, {"u", "c", "t"}});
  const auto vocab = build_vocabulary(base_corpus, 1);
  const LmConfig cfg = lm_config(2, 0.1);
  const TokenId t = *vocab.id_of("t");
  const TokenId c = *vocab.id_of("c");

  // Adversarial shape: t dominates the unigram stream, c almost always
  // precedes t.
  {
    NgramCounts counts(2);
    for (int i = 0; i < 54; ++i) counts.add_comment({t});
    counts.add_comment({c, t});
    auto grown = counts;
    grown.add_occurrence({c}, t);
    const auto before = NgramLM::from_parts(vocab, counts, cfg).next_token_dist({c});
    const auto after = NgramLM::from_parts(vocab, grown, cfg).next_token_dist({c});
    CHECK(after[static_cast<std::size_t>(t)] >= before[static_cast<std::size_t>(t)]);
  }

  // Randomized corpora.
  Rng rng(23);
  const std::vector<TokenId> words{t, c, *vocab.id_of("u")};
  for (int trial = 0; trial < 200; ++trial) {
    NgramCounts counts(2);
    const int m = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < m; ++i) {
      std::vector<TokenId> ids;
      const int len = 1 + static_cast<int>(rng.below(5));
      for (int j = 0; j < len; ++j) {
        ids.push_back(words[static_cast<std::size_t>(rng.below(words.size()))]);
      }
      counts.add_comment(ids);
    }
    const TokenId ctx = words[static_cast<std::size_t>(rng.below(words.size()))];
    const TokenId tok = words[static_cast<std::size_t>(rng.below(words.size()))];
    auto grown = counts;
    grown.add_occurrence({ctx}, tok);
    const auto before = NgramLM::from_parts(vocab, counts, cfg).next_token_dist({ctx});
    const auto after = NgramLM::from_parts(vocab, grown, cfg).next_token_dist({ctx});
    CHECK(after[static_cast<std::size_t>(tok)] >=
          before[static_cast<std::size_t>(tok)] - 1e-15);
  }
}

TEST_CASE("configuration and input validation") {
  const auto corpus = corpus_from_tokens({{"a"}});
  const auto vocab = build_vocabulary(corpus, 1);
  CHECK_THROWS_AS(NgramLM::train(corpus, vocab, lm_config(0, 0.1)), DataError);
  CHECK_THROWS_AS(NgramLM::train(corpus, vocab, lm_config(2, 0.0)), DataError);
  CHECK_THROWS_AS(NgramLM::train(Corpus{}, vocab, lm_config(2, 0.1)), DataError);

  const auto other = build_vocabulary(corpus_from_tokens({{"zzz"}}), 1);
  const auto filtered = filter_corpus(corpus, 20, vocab);
  CHECK_THROWS_AS(NgramLM::train(filtered, other, lm_config(2, 0.1)), DataError);
}

TEST_CASE("json round-trip preserves every distribution") {
  const auto corpus = corpus_from_tokens({{"a", "b", "c"}, {"c", "b"}, {"a"}});
  const auto vocab = build_vocabulary(corpus, 1);
  const auto lm = NgramLM::train(corpus, vocab, lm_config(3, 0.25));
  const auto reloaded = NgramLM::from_json(lm.to_json());
  const TokenId a = *vocab.id_of("a");
  const TokenId b = *vocab.id_of("b");
  for (const std::vector<TokenId> history :
       {std::vector<TokenId>{}, {a}, {a, b}, {b, b}}) {
    CHECK(lm.next_token_dist(history) == reloaded.next_token_dist(history));
  }
}
