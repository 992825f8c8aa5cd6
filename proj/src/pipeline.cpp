#include "stylecast/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "stylecast/corpus.hpp"
#include "stylecast/decoder.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/ngram_lm.hpp"
#include "stylecast/style_weight.hpp"
#include "stylecast/topic_model.hpp"

namespace stylecast {

void write_manifest(const std::filesystem::path& artifact_path,
                    const std::string& command, const nlohmann::json& parameters,
                    const std::vector<std::filesystem::path>& inputs,
                    const std::vector<std::filesystem::path>& outputs,
                    double duration_seconds) {
  nlohmann::json input_digests = nlohmann::json::object();
  for (const auto& in : inputs) {
    input_digests[in.string()] = file_digest_hex(in);
  }
  nlohmann::json output_list = nlohmann::json::array();
  for (const auto& out : outputs) output_list.push_back(out.string());
  const nlohmann::json manifest{{"format_version", kFormatVersion},
                                {"command", command},
                                {"parameters", parameters},
                                {"inputs", std::move(input_digests)},
                                {"outputs", std::move(output_list)},
                                {"tool_version", STYLECAST_VERSION},
                                {"duration_seconds", duration_seconds}};
  save_json_atomic(manifest, artifact_path.string() + ".manifest.json");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw DataError("pipeline: no input file configured");
  const std::filesystem::path input(cfg.input);
  const std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  PipelineResult result;
  result.vocab_path = out_dir / "vocab.json";
  result.train_path = out_dir / "corpus_train.json";
  result.valid_path = out_dir / "corpus_valid.json";
  result.test_path = out_dir / "corpus_test.json";
  result.model_path = out_dir / "model.json";
  result.style_path = out_dir / "style.json";
  result.lm_path = out_dir / "lm.json";
  result.generated_path = out_dir / "generated.txt";
  result.report_path = out_dir / "report.json";

  const Tokenizer tokenizer;

  // Ingest: tokenize, split, cap lengths, build the vocabulary on the
  // training part, replace its out-of-vocabulary tokens.
  auto t0 = Clock::now();
  const Corpus raw = load_corpus_any(input, tokenizer);
  SplitSpec spec;
  spec.train_fraction = cfg.train_frac;
  spec.valid_fraction = cfg.valid_frac;
  spec.test_fraction = cfg.test_frac;
  spec.seed = cfg.split_seed;
  Splits parts = split(raw, spec);

  const Corpus train_capped = drop_long_comments(parts.train, cfg.max_len);
  if (train_capped.empty()) {
    throw DataError("pipeline: training split is empty after the length filter");
  }
  const Vocabulary vocab = build_vocabulary(train_capped, cfg.min_freq);
  const Corpus train = filter_corpus(train_capped, cfg.max_len, vocab);
  // Held-out parts keep their original tokens; only the length cap applies.
  const Corpus valid = drop_long_comments(parts.valid, cfg.max_len);
  const Corpus test = drop_long_comments(parts.test, cfg.max_len);

  save_json_atomic(vocab.to_json(), result.vocab_path);
  save_corpus(train, result.train_path);
  save_corpus(valid, result.valid_path);
  save_corpus(test, result.test_path);
  {
    const nlohmann::json params{{"min_freq", cfg.min_freq},
                                {"max_len", cfg.max_len},
                                {"train_frac", cfg.train_frac},
                                {"valid_frac", cfg.valid_frac},
                                {"test_frac", cfg.test_frac},
                                {"seed", cfg.split_seed}};
    const double dt = seconds_since(t0);
    const std::vector<std::filesystem::path> outputs{
        result.vocab_path, result.train_path, result.valid_path, result.test_path};
    for (const auto& artifact : outputs) {
      write_manifest(artifact, "ingest", params, {input}, outputs, dt);
    }
  }

  // Topic model.
  t0 = Clock::now();
  TopicConfig tcfg;
  tcfg.k = cfg.k;
  tcfg.alpha = cfg.alpha;
  tcfg.beta = cfg.beta;
  tcfg.iterations = cfg.iterations;
  tcfg.burn_in = cfg.burn_in;
  tcfg.seed = cfg.lda_seed;
  const TopicModel model = train_lda(train, vocab, tcfg);
  save_json_atomic(model.to_json(), result.model_path);
  write_manifest(result.model_path, "train-lda",
                 {{"k", tcfg.k},
                  {"alpha", tcfg.resolved_alpha()},
                  {"beta", tcfg.beta},
                  {"iterations", tcfg.iterations},
                  {"burn_in", tcfg.burn_in},
                  {"seed", tcfg.seed}},
                 {result.train_path, result.vocab_path}, {result.model_path},
                 seconds_since(t0));

  // Style weight.
  t0 = Clock::now();
  const StyleWeight style = compute_style_weight(model);
  save_json_atomic(style.to_json(), result.style_path);
  write_manifest(result.style_path, "style", {{"k", tcfg.k}}, {result.model_path},
                 {result.style_path}, seconds_since(t0));

  // Language model.
  t0 = Clock::now();
  LmConfig lcfg;
  lcfg.order = cfg.order;
  lcfg.add_k = cfg.add_k;
  const NgramLM lm = NgramLM::train(train, vocab, lcfg);
  save_json_atomic(lm.to_json(), result.lm_path);
  write_manifest(result.lm_path, "train-lm",
                 {{"order", lcfg.order}, {"add_k", lcfg.add_k}},
                 {result.train_path, result.vocab_path}, {result.lm_path},
                 seconds_since(t0));

  // Generation. Beam hypotheses feed both the text output and, via their
  // token surfaces, the evaluation corpus.
  t0 = Clock::now();
  BeamConfig bcfg;
  bcfg.width = cfg.beam;
  bcfg.max_len = cfg.gen_max_len;
  FusionConfig fcfg;
  fcfg.lambda = cfg.lambda;
  std::optional<StyleWeight> aligned;
  if (!cfg.no_style) aligned = align_to_vocab(style, vocab, vocab);
  const std::vector<Hypothesis> hyps =
      beam_search(lm, aligned ? &*aligned : nullptr, bcfg, fcfg);
  const std::size_t take =
      std::min(static_cast<std::size_t>(cfg.n_outputs), hyps.size());
  {
    std::string text;
    for (std::size_t i = 0; i < take; ++i) {
      text += detokenize_hypothesis(hyps[i], vocab) + "\n";
    }
    write_text_atomic(text, result.generated_path);
  }
  write_manifest(result.generated_path, "generate",
                 {{"beam", bcfg.width},
                  {"max_len", bcfg.max_len},
                  {"n", cfg.n_outputs},
                  {"lambda", fcfg.lambda},
                  {"no_style", cfg.no_style}},
                 {result.lm_path, result.style_path}, {result.generated_path},
                 seconds_since(t0));

  // Evaluation against the test split. Every generated comment is scored
  // against the full reference set.
  t0 = Clock::now();
  if (test.empty()) {
    throw DataError("pipeline: test split is empty; nothing to evaluate against");
  }
  Corpus generated_corpus;
  generated_corpus.provenance.source = result.generated_path.string();
  for (std::size_t i = 0; i < take; ++i) {
    Comment c;
    c.source_id = "gen-" + std::to_string(i + 1);
    for (TokenId id : hyps[i].tokens) {
      if (id == Vocabulary::kBos || id == Vocabulary::kEos) continue;
      c.tokens.push_back(vocab.surface(id));
    }
    if (c.tokens.empty()) continue;
    generated_corpus.comments.push_back(std::move(c));
  }
  if (generated_corpus.empty()) {
    throw DataError("pipeline: generation produced no usable comments");
  }
  std::vector<std::vector<std::string>> all_refs;
  for (const auto& c : test.comments) all_refs.push_back(c.tokens);
  std::vector<std::vector<std::vector<std::string>>> refs(
      generated_corpus.size(), all_refs);
  const PosTagger tagger;
  result.report = report(test, generated_corpus, tagger, refs);
  save_json_atomic(result.report.to_json(), result.report_path);
  write_manifest(result.report_path, "evaluate", nlohmann::json::object(),
                 {result.test_path, result.generated_path}, {result.report_path},
                 seconds_since(t0));

  return result;
}

}  // namespace stylecast
