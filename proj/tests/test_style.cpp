#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stylecast/corpus.hpp"
#include "stylecast/decoder.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/rng.hpp"
#include "stylecast/style_weight.hpp"
#include "test_util.hpp"

using namespace stylecast;
using testutil::corpus_from_tokens;
using testutil::make_model;

TEST_CASE("votes go to the argmax topic and y counts the shares") {
  // Rows engineered so the argmax sequence is 0, 0, 1, 2.
  const std::vector<std::vector<double>> theta = {{0.6, 0.3, 0.1},
                                                  {0.5, 0.3, 0.2},
                                                  {0.2, 0.7, 0.1},
                                                  {0.1, 0.2, 0.7}};
  const auto model = make_model({"w"}, {{1.0}, {1.0}, {1.0}}, theta);
  const auto [vote, dist] = vote_topics(model);
  CHECK(vote.winners == std::vector<int>{0, 0, 1, 2});
  CHECK(dist.y == std::vector<double>{0.5, 0.25, 0.25});

  const auto t = vote.indicator();
  for (const auto& row : t) {
    int sum = 0;
    for (int v : row) {
      CHECK((v == 0 || v == 1));
      sum += v;
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("uniform theta rows all vote for topic 0") {
  const std::vector<std::vector<double>> theta(5, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto vote = vote_rows(theta);
  for (int w : vote.winners) CHECK(w == 0);
  const auto model = make_model({"w"}, {{1.0}, {1.0}, {1.0}}, theta);
  const auto [v2, dist] = vote_topics(model);
  CHECK(dist.y == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("votes are invariant under positive row scaling") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(4));
    std::vector<std::vector<double>> theta(8, std::vector<double>(static_cast<std::size_t>(k)));
    for (auto& row : theta) {
      for (auto& v : row) v = 0.05 + rng.uniform01();
    }
    auto scaled = theta;
    const double c = 0.1 + 5.0 * rng.uniform01();
    for (auto& row : scaled) {
      for (auto& v : row) v *= c;
    }
    CHECK(vote_rows(theta).winners == vote_rows(scaled).winners);
  }
}

TEST_CASE("style weight mixes topic rows by vote share") {
  SUBCASE("degenerate mixture copies the winning topic") {
    // Every comment votes topic 0 -> y = (1, 0) -> w == phi_0 bit for bit.
    const auto model = make_model({"a", "b"}, {{0.7, 0.3}, {0.4, 0.6}},
                                  {{0.9, 0.1}, {0.8, 0.2}});
    const auto sw = compute_style_weight(model);
    CHECK(sw.y == std::vector<double>{1.0, 0.0});
    CHECK(sw.w == std::vector<double>{0.7, 0.3});
  }
  SUBCASE("symmetric mixture averages symmetric rows exactly") {
    const auto model = make_model({"a", "b"}, {{0.8, 0.2}, {0.2, 0.8}},
                                  {{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}});
    const auto sw = compute_style_weight(model);
    CHECK(sw.y == std::vector<double>{0.5, 0.5});
    CHECK(sw.w[0] == 0.5);
    CHECK(sw.w[1] == 0.5);
  }
  SUBCASE("weighted mixture matches the hand dot product") {
    // y = (0.25, 0.75); w[0] = 0.25*0.9 + 0.75*0.1 = 0.3, w[1] = 0.7.
    const auto model = make_model({"a", "b"}, {{0.9, 0.1}, {0.1, 0.9}},
                                  {{0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}, {0.1, 0.9}});
    const auto sw = compute_style_weight(model);
    CHECK(sw.y == std::vector<double>{0.25, 0.75});
    CHECK(sw.w[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(sw.w[1] == doctest::Approx(0.7).epsilon(1e-14));
  }
}

TEST_CASE("single-topic style weight equals the topic-word vector") {
  const auto corpus = corpus_from_tokens({{"a", "a", "b"}, {"b", "a"}});
  const auto vocab = build_vocabulary(corpus, 1);
  TopicConfig cfg = TopicConfig::defaults(1, 5);
  cfg.iterations = 20;
  cfg.burn_in = 5;
  const auto model = train_lda(corpus, vocab, cfg);
  const auto sw = compute_style_weight(model);
  CHECK(sw.w == model.phi[0]);
  CHECK(sw.y == std::vector<double>{1.0});
  double sum = 0.0;
  for (double v : sw.w) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("style weight ignores topic labels") {
  const auto data = testutil::make_two_topic_corpus(50, 0.7, 8);
  const auto vocab = build_vocabulary(data.corpus, 1);
  TopicConfig cfg = TopicConfig::defaults(2, 9);
  cfg.iterations = 60;
  cfg.burn_in = 10;
  const auto model = train_lda(data.corpus, vocab, cfg);

  // K = 2: swapping both phi rows and theta columns commutes the two-term
  // sum, so the weights agree exactly.
  const auto sw = compute_style_weight(model);
  const auto sw_swapped = compute_style_weight(permute_topics(model, {1, 0}));
  CHECK(sw.w == sw_swapped.w);

  // K = 3: reordering a three-term float sum can move the last bit.
  TopicConfig cfg3 = TopicConfig::defaults(3, 9);
  cfg3.iterations = 60;
  cfg3.burn_in = 10;
  const auto model3 = train_lda(data.corpus, vocab, cfg3);
  const auto w_a = compute_style_weight(model3).w;
  const auto w_b = compute_style_weight(permute_topics(model3, {2, 0, 1})).w;
  REQUIRE(w_a.size() == w_b.size());
  for (std::size_t i = 0; i < w_a.size(); ++i) {
    CHECK(w_a[i] == doctest::Approx(w_b[i]).epsilon(1e-12));
  }
}

namespace {

// Style weight over an explicit domain, stamped as belonging to `vocab`.
StyleWeight hand_weight(const Vocabulary& vocab, std::vector<std::string> domain,
                        std::vector<double> w) {
  StyleWeight sw;
  sw.domain = std::move(domain);
  sw.w = std::move(w);
  sw.vocab_fingerprint = vocab.fingerprint();
  sw.source_topics = 1;
  sw.y = {1.0};
  return sw;
}

}  // namespace

TEST_CASE("alignment keeps shared weights and mean-fills the rest") {
  const auto source_vocab = build_vocabulary(
      corpus_from_tokens({{"a", "a", "b", "b"}}), 1);
  const auto target_vocab = build_vocabulary(
      corpus_from_tokens({{"a", "a", "b", "b", "c", "c"}}), 1);
  const auto sw = hand_weight(source_vocab, {"a", "b"}, {0.6, 0.4});

  const auto aligned = align_to_vocab(sw, source_vocab, target_vocab);
  REQUIRE(aligned.w.size() == static_cast<std::size_t>(target_vocab.size()));
  CHECK(aligned.domain == target_vocab.tokens());
  CHECK(aligned.vocab_fingerprint == target_vocab.fingerprint());

  // Oracle: mapped weights 0.6 (a) and 0.4 (b); c plus the three reserved
  // tokens take the mean 0.5; renormalize by the pre-normalization total 3.
  const double fill = (0.6 + 0.4) / 2.0;
  const double total = 0.6 + 0.4 + 4 * fill;
  const auto id = [&](const char* s) {
    return static_cast<std::size_t>(*target_vocab.id_of(s));
  };
  CHECK(aligned.w[id("a")] == doctest::Approx(0.6 / total).epsilon(1e-12));
  CHECK(aligned.w[id("b")] == doctest::Approx(0.4 / total).epsilon(1e-12));
  CHECK(aligned.w[id("c")] == doctest::Approx(fill / total).epsilon(1e-12));
  CHECK(aligned.w[Vocabulary::kEos] == doctest::Approx(fill / total).epsilon(1e-12));
  // The shared tokens keep their relative order and ratio.
  CHECK(aligned.w[id("a")] / aligned.w[id("b")] ==
        doctest::Approx(0.6 / 0.4).epsilon(1e-12));

  double sum = 0.0;
  for (double v : aligned.w) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("alignment onto the same vocabulary is idempotent") {
  const auto vocab = build_vocabulary(corpus_from_tokens({{"a", "b", "b", "c"}}), 1);
  const auto sw = hand_weight(vocab, {"a", "b", "c"}, {0.5, 0.3, 0.2});
  const auto once = align_to_vocab(sw, vocab, vocab);
  const auto twice = align_to_vocab(once, vocab, vocab);
  REQUIRE(once.w.size() == twice.w.size());
  for (std::size_t i = 0; i < once.w.size(); ++i) {
    CHECK(twice.w[i] == doctest::Approx(once.w[i]).epsilon(1e-12));
  }
}

TEST_CASE("alignment fails without overlap or with the wrong fingerprint") {
  const auto source_vocab = build_vocabulary(corpus_from_tokens({{"x", "y"}}), 1);
  const auto target_vocab = build_vocabulary(corpus_from_tokens({{"a", "b"}}), 1);
  const auto sw = hand_weight(source_vocab, {"x", "y"}, {0.5, 0.5});
  CHECK_THROWS_AS(align_to_vocab(sw, source_vocab, target_vocab), DataError);

  auto forged = sw;
  forged.vocab_fingerprint = "deadbeefdeadbeef";
  CHECK_THROWS_AS(align_to_vocab(forged, source_vocab, source_vocab), DataError);
}

TEST_CASE("mean-filled tokens keep their base-model ranking after fusion") {
  // Source covers {a, b}; target adds c, d and the reserved tokens, all of
  // which get the same fill weight. Fusing any base distribution with the
  // aligned weight must order the filled tokens exactly as the base does.
  const auto source_vocab = build_vocabulary(corpus_from_tokens({{"a", "b"}}), 1);
  const auto target_vocab =
      build_vocabulary(corpus_from_tokens({{"a", "b", "c", "d"}}), 1);
  const auto aligned = align_to_vocab(hand_weight(source_vocab, {"a", "b"}, {0.7, 0.3}),
                                      source_vocab, target_vocab);

  std::vector<TokenId> filled;
  for (TokenId id = 0; id < target_vocab.size(); ++id) {
    const auto& s = target_vocab.surface(id);
    if (s != "a" && s != "b") filled.push_back(id);
  }
  REQUIRE(filled.size() == 5);  // three reserved tokens plus c and d

  Rng rng(57);
  FusionConfig fcfg;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> base(static_cast<std::size_t>(target_vocab.size()));
    double total = 0.0;
    for (auto& v : base) {
      v = 0.01 + rng.uniform01();
      total += v;
    }
    for (auto& v : base) v /= total;
    const auto fused = fuse(base, aligned, fcfg);
    for (std::size_t i = 0; i < filled.size(); ++i) {
      for (std::size_t j = i + 1; j < filled.size(); ++j) {
        const auto a = static_cast<std::size_t>(filled[i]);
        const auto b = static_cast<std::size_t>(filled[j]);
        CHECK((base[a] < base[b]) == (fused[a] < fused[b]));
      }
    }
  }
}

TEST_CASE("style weight json round-trips") {
  const auto vocab = build_vocabulary(corpus_from_tokens({{"a", "b"}}), 1);
  const auto sw = hand_weight(vocab, {"a", "b"}, {0.75, 0.25});
  const auto reloaded = StyleWeight::from_json(sw.to_json());
  CHECK(reloaded.domain == sw.domain);
  CHECK(reloaded.w == sw.w);
  CHECK(reloaded.vocab_fingerprint == sw.vocab_fingerprint);
  CHECK(reloaded.y == sw.y);
}
