#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "stylecast/corpus.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/rng.hpp"
#include "test_util.hpp"

using namespace stylecast;
using testutil::corpus_from_tokens;
using testutil::corpus_from_texts;

TEST_CASE("build_vocabulary applies the frequency threshold") {
  std::vector<std::vector<std::string>> comments;
  for (int i = 0; i < 7; ++i) comments.push_back({"nice"});
  comments.push_back({"qwop"});
  const auto vocab = build_vocabulary(corpus_from_tokens(comments), 5);
  CHECK(vocab.contains("nice"));
  CHECK(!vocab.contains("qwop"));
  CHECK(vocab.freq(*vocab.id_of("nice")) == 7);
}

TEST_CASE("build_vocabulary with min_freq 1 keeps every distinct token") {
  const auto corpus = corpus_from_texts({"a b c", "d e", "a"});
  const auto vocab = build_vocabulary(corpus, 1);
  for (const char* t : {"a", "b", "c", "d", "e"}) CHECK(vocab.contains(t));
  CHECK(vocab.word_count() == 5);
}

TEST_CASE("build_vocabulary matches a hand count on a small fixture") {
  // Ten comments with known token frequencies; the oracle is an
  // independent count over the same token lists.
  const std::vector<std::vector<std::string>> comments = {
      {"love", "this", "!"},       {"love", "that", "!"},
      {"love", "this", "look"},    {"love", "it", "!"},
      {"love", "this", "!"},       {"this", "look", "!"},
      {"this", "is", "rare"},      {"this", "rocks", "!"},
      {"seldom", "word"},          {"word", "word", "!"}};
  std::map<std::string, int> oracle;
  for (const auto& c : comments) {
    for (const auto& t : c) ++oracle[t];
  }
  const int min_freq = 5;
  std::set<std::string> expected = {Vocabulary::bos_surface(),
                                    Vocabulary::eos_surface(),
                                    Vocabulary::unk_surface()};
  for (const auto& [t, n] : oracle) {
    if (n >= min_freq) expected.insert(t);
  }

  const auto vocab = build_vocabulary(corpus_from_tokens(comments), min_freq);
  std::set<std::string> actual(vocab.tokens().begin(), vocab.tokens().end());
  CHECK(actual == expected);
  for (const auto& [t, n] : oracle) {
    if (n >= min_freq) CHECK(vocab.freq(*vocab.id_of(t)) == n);
  }
}

TEST_CASE("vocabulary ordering is frequency-descending then lexicographic") {
  const auto corpus = corpus_from_tokens({{"b", "b", "c", "c", "a"}});
  const auto vocab = build_vocabulary(corpus, 1);
  // b and c tie at 2 -> lexicographic; a has 1.
  CHECK(vocab.surface(3) == "b");
  CHECK(vocab.surface(4) == "c");
  CHECK(vocab.surface(5) == "a");
  CHECK(vocab.id_of("b") == 3);
  // Reserved tokens sit at fixed ids.
  CHECK(vocab.surface(Vocabulary::kBos) == "<bos>");
  CHECK(vocab.surface(Vocabulary::kEos) == "<eos>");
  CHECK(vocab.surface(Vocabulary::kUnk) == "<unk>");
}

TEST_CASE("build_vocabulary rejects an empty corpus") {
  CHECK_THROWS_AS(build_vocabulary(Corpus{}, 5), DataError);
}

TEST_CASE("build_vocabulary is insensitive to comment order") {
  auto comments = corpus_from_texts({"x y z", "y z", "z !", "w w w w w"}).comments;
  Corpus a;
  a.comments = comments;
  std::reverse(comments.begin(), comments.end());
  Corpus b;
  b.comments = comments;
  CHECK(build_vocabulary(a, 2).to_json().dump() == build_vocabulary(b, 2).to_json().dump());
}

TEST_CASE("encode/decode round-trips in-vocabulary tokens") {
  const auto corpus = corpus_from_texts({"love this look !", "love it !"});
  const auto vocab = build_vocabulary(corpus, 1);
  for (const auto& comment : corpus.comments) {
    CHECK(decode(encode(comment, vocab), vocab) == comment.tokens);
  }
  CHECK(vocab.encode("neverseen") == Vocabulary::kUnk);
}

TEST_CASE("filter_corpus drops long comments and replaces oov tokens") {
  std::vector<std::vector<std::string>> comments;
  comments.push_back(std::vector<std::string>(25, "word"));   // dropped
  comments.push_back(std::vector<std::string>(20, "word"));   // kept
  comments.push_back({"word", "xyzzy"});                      // xyzzy -> <unk>
  const auto corpus = corpus_from_tokens(comments);
  const auto vocab = build_vocabulary(corpus_from_tokens({{ "word", "word", "word",
                                                            "word", "word" }}), 5);
  const auto filtered = filter_corpus(corpus, 20, vocab);
  REQUIRE(filtered.size() == 2);
  CHECK(filtered.comments[0].tokens.size() == 20);
  CHECK(filtered.comments[1].tokens ==
        std::vector<std::string>{"word", "<unk>"});
  CHECK(filtered.provenance.max_len == 20);
  CHECK(filtered.provenance.vocab_fingerprint == vocab.fingerprint());
}

TEST_CASE("filter_corpus leaves short corpora untouched") {
  const auto corpus = corpus_from_texts({"a b", "c d e", "f"});
  const auto vocab = build_vocabulary(corpus, 1);
  CHECK(filter_corpus(corpus, 20, vocab).size() == corpus.size());
}

TEST_CASE("filter_corpus length drop matches a manual count") {
  // Three 50-token comments among twelve: M decreases by exactly three.
  std::vector<std::vector<std::string>> comments;
  for (int i = 0; i < 9; ++i) comments.push_back({"ok", "fine"});
  for (int i = 0; i < 3; ++i) comments.push_back(std::vector<std::string>(50, "long"));
  const auto corpus = corpus_from_tokens(comments);
  const auto vocab = build_vocabulary(corpus, 1);
  CHECK(filter_corpus(corpus, 20, vocab).size() == corpus.size() - 3);
}

TEST_CASE("degenerate split puts everything into train, in input order") {
  const auto corpus = corpus_from_texts({"a", "b", "c", "d"});
  const auto parts = split(corpus, SplitSpec{1.0, 0.0, 0.0, 9});
  REQUIRE(parts.train.size() == 4);
  CHECK(parts.valid.empty());
  CHECK(parts.test.empty());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(parts.train.comments[i].source_id == corpus.comments[i].source_id);
  }
}

TEST_CASE("same seed gives byte-identical splits") {
  std::vector<std::vector<std::string>> comments;
  for (int i = 0; i < 37; ++i) comments.push_back({"tok" + std::to_string(i)});
  const auto corpus = corpus_from_tokens(comments);
  const SplitSpec spec{0.6, 0.2, 0.2, 12345};
  const auto a = split(corpus, spec);
  const auto b = split(corpus, spec);
  CHECK(corpus_to_json(a.train).dump() == corpus_to_json(b.train).dump());
  CHECK(corpus_to_json(a.valid).dump() == corpus_to_json(b.valid).dump());
  CHECK(corpus_to_json(a.test).dump() == corpus_to_json(b.test).dump());
}

TEST_CASE("split sizes follow the fractions") {
  std::vector<std::vector<std::string>> comments;
  for (int i = 0; i < 100; ++i) comments.push_back({"c" + std::to_string(i)});
  const auto parts = split(corpus_from_tokens(comments), SplitSpec{0.8, 0.1, 0.1, 42});
  CHECK(parts.train.size() == 80);
  CHECK(parts.valid.size() == 10);
  CHECK(parts.test.size() == 10);
}

TEST_CASE("split partitions the corpus exactly") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 3 + static_cast<int>(rng.below(40));
    std::vector<std::vector<std::string>> comments;
    for (int i = 0; i < m; ++i) comments.push_back({"c" + std::to_string(i)});
    const auto corpus = corpus_from_tokens(comments);
    const auto parts =
        split(corpus, SplitSpec{0.5, 0.25, 0.25, rng.next_u64()});
    CHECK(parts.train.size() + parts.valid.size() + parts.test.size() == corpus.size());
    std::set<std::string> seen;
    for (const auto* part : {&parts.train, &parts.valid, &parts.test}) {
      for (const auto& c : part->comments) {
        CHECK(seen.insert(c.source_id).second);  // disjoint
      }
    }
    CHECK(seen.size() == corpus.size());  // exhaustive
  }
}

TEST_CASE("split validates its inputs") {
  const auto tiny = corpus_from_texts({"a", "b"});
  CHECK_THROWS_AS(split(tiny, SplitSpec{0.4, 0.3, 0.3, 1}), DataError);
  const auto ok = corpus_from_texts({"a", "b", "c"});
  CHECK_THROWS_AS(split(ok, SplitSpec{0.5, 0.5, 0.5, 1}), DataError);
  CHECK_THROWS_AS(split(ok, SplitSpec{-0.2, 0.6, 0.6, 1}), DataError);
}

TEST_CASE("jsonl ingestion parses ids, text and meta") {
  const auto dir = testutil::fresh_temp_dir("ingest");
  const auto path = dir / "comments.jsonl";
  {
    std::ofstream out(path);
    out << R"({"id": "p1", "text": "love it !", "meta": {"user": "ana"}})" << "\n";
    out << "\n";  // blank lines are fine
    out << R"x({"text": "so cute :)"})x" << "\n";
    out << R"({"id": 7, "text": ""})" << "\n";  // tokenizes to nothing: skipped
  }
  const Tokenizer tok;
  const auto corpus = ingest_jsonl(path, tok);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.comments[0].source_id == "p1");
  CHECK(corpus.comments[0].meta.at("user") == "ana");
  CHECK(corpus.comments[0].tokens == std::vector<std::string>{"love", "it", "!"});
  CHECK(corpus.comments[1].source_id == "3");  // line number fallback
  CHECK(corpus.comments[1].tokens == std::vector<std::string>{"so", "cute", ":)"});
}

TEST_CASE("jsonl ingestion reports the offending line") {
  const auto dir = testutil::fresh_temp_dir("ingest-bad");
  const auto path = dir / "bad.jsonl";
  {
    std::ofstream out(path);
    out << R"({"text": "fine"})" << "\n";
    out << "{not json}\n";
  }
  const Tokenizer tok;
  try {
    ingest_jsonl(path, tok);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("plain-text ingestion numbers lines") {
  const auto dir = testutil::fresh_temp_dir("plain");
  const auto path = dir / "comments.txt";
  {
    std::ofstream out(path);
    out << "first comment !\n\nthird one <3\n";
  }
  const Tokenizer tok;
  const auto corpus = ingest_plain(path, tok);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.comments[0].source_id == "1");
  CHECK(corpus.comments[1].source_id == "3");
}

TEST_CASE("corpus artifacts round-trip and load_corpus_any sniffs formats") {
  const auto dir = testutil::fresh_temp_dir("roundtrip");
  auto corpus = corpus_from_texts({"love this !", "so cute :)"});
  corpus.provenance.min_freq = 5;
  corpus.provenance.notes.push_back("note");

  const auto artifact = dir / "corpus.json";
  save_corpus(corpus, artifact);
  const auto reloaded = load_corpus(artifact);
  CHECK(corpus_to_json(reloaded).dump() == corpus_to_json(corpus).dump());

  const Tokenizer tok;
  CHECK(load_corpus_any(artifact, tok).size() == 2);

  const auto jsonl = dir / "raw.jsonl";
  {
    std::ofstream out(jsonl);
    out << R"({"text": "a b"})" << "\n";
  }
  CHECK(load_corpus_any(jsonl, tok).size() == 1);

  const auto plain = dir / "raw.txt";
  {
    std::ofstream out(plain);
    out << "a b c\n";
  }
  CHECK(load_corpus_any(plain, tok).comments[0].tokens.size() == 3);

  CHECK_THROWS_AS(load_corpus(dir / "missing.json"), DataError);
}
