// stylecast: corpus-styled comment generation and diversity evaluation.
//
// Subcommands wire the library end to end: ingest raw comments, train the
// topic model and the n-gram language model, derive the style weight,
// generate with style-fused beam search, and score (reference, generated)
// corpus pairs. Every artifact-producing command writes a run manifest
// beside its output.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "stylecast/corpus.hpp"
#include "stylecast/decoder.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"
#include "stylecast/metrics.hpp"
#include "stylecast/ngram_lm.hpp"
#include "stylecast/pipeline.hpp"
#include "stylecast/pos_tagger.hpp"
#include "stylecast/style_weight.hpp"
#include "stylecast/topic_model.hpp"

namespace {

using namespace stylecast;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct IngestArgs {
  std::string input;
  std::string out_dir = "out";
  int min_freq = 5;
  int max_len = 20;
  double train_frac = 0.8, valid_frac = 0.1, test_frac = 0.1;
  std::uint64_t seed = 42;
};

int run_ingest(const IngestArgs& a) {
  const auto t0 = Clock::now();
  const Tokenizer tokenizer;
  const std::filesystem::path out_dir(a.out_dir);
  std::filesystem::create_directories(out_dir);

  const Corpus raw = load_corpus_any(a.input, tokenizer);
  SplitSpec spec{a.train_frac, a.valid_frac, a.test_frac, a.seed};
  Splits parts = split(raw, spec);
  const Corpus train_capped = drop_long_comments(parts.train, a.max_len);
  if (train_capped.empty()) throw DataError("ingest: empty training split");
  const Vocabulary vocab = build_vocabulary(train_capped, a.min_freq);
  const Corpus train = filter_corpus(train_capped, a.max_len, vocab);
  const Corpus valid = drop_long_comments(parts.valid, a.max_len);
  const Corpus test = drop_long_comments(parts.test, a.max_len);

  const auto vocab_path = out_dir / "vocab.json";
  const auto train_path = out_dir / "corpus_train.json";
  const auto valid_path = out_dir / "corpus_valid.json";
  const auto test_path = out_dir / "corpus_test.json";
  save_json_atomic(vocab.to_json(), vocab_path);
  save_corpus(train, train_path);
  save_corpus(valid, valid_path);
  save_corpus(test, test_path);
  const nlohmann::json ingest_params{{"min_freq", a.min_freq},
                                     {"max_len", a.max_len},
                                     {"train_frac", a.train_frac},
                                     {"valid_frac", a.valid_frac},
                                     {"test_frac", a.test_frac},
                                     {"seed", a.seed}};
  const std::vector<std::filesystem::path> ingest_outputs{vocab_path, train_path,
                                                          valid_path, test_path};
  for (const auto& artifact : ingest_outputs) {
    write_manifest(artifact, "ingest", ingest_params, {a.input}, ingest_outputs,
                   seconds_since(t0));
  }
  std::cout << "vocabulary: " << vocab.size() << " tokens ("
            << vocab.word_count() << " words), train " << train.size()
            << " / valid " << valid.size() << " / test " << test.size()
            << " comments\n";
  return 0;
}

struct TrainLdaArgs {
  std::string corpus, vocab, out = "model.json";
  int k = 3;
  double alpha = 0.0, beta = 0.01;
  int iterations = 1000, burn_in = 200;
  std::uint64_t seed = 0;
};

int run_train_lda(const TrainLdaArgs& a) {
  const auto t0 = Clock::now();
  const Corpus corpus = load_corpus(a.corpus);
  const Vocabulary vocab = Vocabulary::from_json(load_json_file(a.vocab));
  TopicConfig cfg;
  cfg.k = a.k;
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  cfg.iterations = a.iterations;
  cfg.burn_in = a.burn_in;
  cfg.seed = a.seed;
  const TopicModel model = train_lda(corpus, vocab, cfg);
  save_json_atomic(model.to_json(), a.out);
  write_manifest(a.out, "train-lda",
                 {{"k", cfg.k},
                  {"alpha", cfg.resolved_alpha()},
                  {"beta", cfg.beta},
                  {"iterations", cfg.iterations},
                  {"burn_in", cfg.burn_in},
                  {"seed", cfg.seed}},
                 {a.corpus, a.vocab}, {a.out}, seconds_since(t0));
  std::cout << "trained " << cfg.k << "-topic model over " << model.num_words()
            << " words, " << model.num_comments() << " comments -> " << a.out << "\n";
  return 0;
}

struct TrainLmArgs {
  std::string corpus, vocab, out = "lm.json";
  int order = 3;
  double add_k = 0.1;
};

int run_train_lm(const TrainLmArgs& a) {
  const auto t0 = Clock::now();
  const Corpus corpus = load_corpus(a.corpus);
  const Vocabulary vocab = Vocabulary::from_json(load_json_file(a.vocab));
  LmConfig cfg;
  cfg.order = a.order;
  cfg.add_k = a.add_k;
  const NgramLM lm = NgramLM::train(corpus, vocab, cfg);
  save_json_atomic(lm.to_json(), a.out);
  write_manifest(a.out, "train-lm", {{"order", cfg.order}, {"add_k", cfg.add_k}},
                 {a.corpus, a.vocab}, {a.out}, seconds_since(t0));
  std::cout << "trained order-" << cfg.order << " language model -> " << a.out << "\n";
  return 0;
}

struct StyleArgs {
  std::string model, out = "style.json";
  std::string align_vocab;  // optional: emit the weight aligned to this vocabulary
};

int run_style(const StyleArgs& a) {
  const auto t0 = Clock::now();
  const TopicModel model = TopicModel::from_json(load_json_file(a.model));
  StyleWeight sw = compute_style_weight(model);
  std::vector<std::filesystem::path> inputs{a.model};
  if (!a.align_vocab.empty()) {
    const Vocabulary target = Vocabulary::from_json(load_json_file(a.align_vocab));
    if (sw.vocab_fingerprint != target.fingerprint()) {
      throw DataError("style: model was trained on a different vocabulary than " +
                      a.align_vocab);
    }
    sw = align_to_vocab(sw, target, target);
    inputs.push_back(a.align_vocab);
  }
  save_json_atomic(sw.to_json(), a.out);
  write_manifest(a.out, "style", {{"aligned", !a.align_vocab.empty()}}, inputs,
                 {a.out}, seconds_since(t0));
  std::cout << "style weight over " << sw.w.size() << " tokens -> " << a.out << "\n";
  return 0;
}

struct GenerateArgs {
  std::string lm, style, out;
  int beam = 3, max_len = 20, n = 5;
  double lambda = 1.0;
  bool no_style = false;
  bool length_normalize = false;
};

int run_generate(const GenerateArgs& a) {
  const auto t0 = Clock::now();
  const NgramLM lm = NgramLM::from_json(load_json_file(a.lm));
  std::optional<StyleWeight> style;
  if (!a.no_style) {
    if (a.style.empty()) {
      throw DataError("generate: pass --style or use --no-style");
    }
    style = StyleWeight::from_json(load_json_file(a.style));
  }
  BeamConfig bcfg;
  bcfg.width = a.beam;
  bcfg.max_len = a.max_len;
  bcfg.length_normalize = a.length_normalize;
  FusionConfig fcfg;
  fcfg.lambda = a.lambda;
  const auto lines = generate(lm, style, bcfg, fcfg, a.n);
  if (a.out.empty()) {
    for (const auto& line : lines) std::cout << line << "\n";
  } else {
    std::string text;
    for (const auto& line : lines) text += line + "\n";
    write_text_atomic(text, a.out);
    std::vector<std::filesystem::path> inputs{a.lm};
    if (!a.no_style) inputs.push_back(a.style);
    write_manifest(a.out, "generate",
                   {{"beam", a.beam},
                    {"max_len", a.max_len},
                    {"n", a.n},
                    {"lambda", a.lambda},
                    {"no_style", a.no_style}},
                   inputs, {a.out}, seconds_since(t0));
  }
  return 0;
}

// Plain key=value config for the pipeline. Keys mirror the long flag names
// without the dashes prefix; values from the file apply only where the flag
// was not given on the command line, so flags win.
void apply_pipeline_config(const std::string& path, const CLI::App& pipe,
                           PipelineConfig& cfg) {
  const std::string text = read_text_file(path);
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const auto want = [&](const char* flag, const char* key) -> const std::string* {
    if (pipe.count(flag) > 0) return nullptr;  // command line wins
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  const auto parse_u64 = [&](const std::string& s, const char* key) {
    try {
      return static_cast<std::uint64_t>(std::stoull(s));
    } catch (const std::exception&) {
      throw DataError(path + ": bad value for " + key + ": " + s);
    }
  };
  const auto parse_int = [&](const std::string& s, const char* key) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw DataError(path + ": bad value for " + key + ": " + s);
    }
  };
  const auto parse_double = [&](const std::string& s, const char* key) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw DataError(path + ": bad value for " + key + ": " + s);
    }
  };

  if (const auto* v = want("--input", "input")) cfg.input = *v;
  if (const auto* v = want("--out-dir", "out-dir")) cfg.out_dir = *v;
  if (const auto* v = want("--min-freq", "min-freq")) cfg.min_freq = parse_int(*v, "min-freq");
  if (const auto* v = want("--max-len", "max-len")) cfg.max_len = parse_int(*v, "max-len");
  if (const auto* v = want("--train-frac", "train-frac")) cfg.train_frac = parse_double(*v, "train-frac");
  if (const auto* v = want("--valid-frac", "valid-frac")) cfg.valid_frac = parse_double(*v, "valid-frac");
  if (const auto* v = want("--test-frac", "test-frac")) cfg.test_frac = parse_double(*v, "test-frac");
  if (const auto* v = want("--split-seed", "split-seed")) cfg.split_seed = parse_u64(*v, "split-seed");
  if (const auto* v = want("--k", "k")) cfg.k = parse_int(*v, "k");
  if (const auto* v = want("--alpha", "alpha")) cfg.alpha = parse_double(*v, "alpha");
  if (const auto* v = want("--beta", "beta")) cfg.beta = parse_double(*v, "beta");
  if (const auto* v = want("--iterations", "iterations")) cfg.iterations = parse_int(*v, "iterations");
  if (const auto* v = want("--burn-in", "burn-in")) cfg.burn_in = parse_int(*v, "burn-in");
  if (const auto* v = want("--lda-seed", "lda-seed")) cfg.lda_seed = parse_u64(*v, "lda-seed");
  if (const auto* v = want("--order", "order")) cfg.order = parse_int(*v, "order");
  if (const auto* v = want("--add-k", "add-k")) cfg.add_k = parse_double(*v, "add-k");
  if (const auto* v = want("--beam", "beam")) cfg.beam = parse_int(*v, "beam");
  if (const auto* v = want("--gen-max-len", "gen-max-len")) cfg.gen_max_len = parse_int(*v, "gen-max-len");
  if (const auto* v = want("--n", "n")) cfg.n_outputs = parse_int(*v, "n");
  if (const auto* v = want("--lambda", "lambda")) cfg.lambda = parse_double(*v, "lambda");
  if (const auto* v = want("--no-style", "no-style")) {
    cfg.no_style = (*v == "1" || *v == "true" || *v == "yes");
  }
}

struct EvaluateArgs {
  std::string ref, gen, out = "report.json";
  std::string ref_tags, gen_tags;
};

int run_evaluate(const EvaluateArgs& a) {
  const auto t0 = Clock::now();
  const Tokenizer tokenizer;
  const Corpus reference = load_corpus_any(a.ref, tokenizer);
  const Corpus generated = load_corpus_any(a.gen, tokenizer);
  if (reference.empty()) throw DataError("evaluate: reference corpus is empty");
  if (generated.empty()) throw DataError("evaluate: generated corpus is empty");

  std::optional<TagFile> ref_tags, gen_tags;
  if (!a.ref_tags.empty()) ref_tags = load_tags(a.ref_tags);
  if (!a.gen_tags.empty()) gen_tags = load_tags(a.gen_tags);
  for (const auto& tf : {&ref_tags, &gen_tags}) {
    if (*tf && (*tf)->unknown_tag_count > 0) {
      std::cerr << "warning: " << (*tf)->unknown_tag_count
                << " unknown tags mapped to X\n";
    }
  }

  std::vector<std::vector<std::string>> all_refs;
  for (const auto& c : reference.comments) all_refs.push_back(c.tokens);
  const std::vector<std::vector<std::vector<std::string>>> refs(generated.size(),
                                                                all_refs);
  const PosTagger tagger;
  const DiversityReport rep =
      report(reference, generated, tagger, refs,
             ref_tags ? &ref_tags->sentences : nullptr,
             gen_tags ? &gen_tags->sentences : nullptr);
  save_json_atomic(rep.to_json(), a.out);
  std::vector<std::filesystem::path> inputs{a.ref, a.gen};
  if (!a.ref_tags.empty()) inputs.push_back(a.ref_tags);
  if (!a.gen_tags.empty()) inputs.push_back(a.gen_tags);
  write_manifest(a.out, "evaluate", nlohmann::json::object(), inputs, {a.out},
                 seconds_since(t0));
  std::cout << "dic_rate " << rep.dic_rate << "  wf_kl " << rep.wf_kl
            << "  pos_kl " << rep.pos_kl << "  bleu4 " << rep.bleu4 << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus-styled comment generation and diversity measures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", STYLECAST_VERSION);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "tokenize, split, and build a vocabulary");
  ingest->add_option("--input", ingest_args.input, "raw comments (JSON Lines or plain text)")
      ->required();
  ingest->add_option("--out-dir", ingest_args.out_dir, "output directory");
  ingest->add_option("--min-freq", ingest_args.min_freq, "frequency threshold");
  ingest->add_option("--max-len", ingest_args.max_len, "comment length cap");
  ingest->add_option("--train", ingest_args.train_frac, "training fraction");
  ingest->add_option("--valid", ingest_args.valid_frac, "validation fraction");
  ingest->add_option("--test", ingest_args.test_frac, "test fraction");
  ingest->add_option("--seed", ingest_args.seed, "split seed");

  TrainLdaArgs lda_args;
  auto* lda = app.add_subcommand("train-lda", "fit the topic model");
  lda->add_option("--corpus", lda_args.corpus, "training corpus artifact")->required();
  lda->add_option("--vocab", lda_args.vocab, "vocabulary artifact")->required();
  lda->add_option("--k", lda_args.k, "topic count");
  lda->add_option("--alpha", lda_args.alpha, "doc-topic prior (0 = 5/k)");
  lda->add_option("--beta", lda_args.beta, "topic-word prior");
  lda->add_option("--iterations", lda_args.iterations, "Gibbs sweeps");
  lda->add_option("--burn-in", lda_args.burn_in, "sweeps before estimation");
  lda->add_option("--seed", lda_args.seed, "sampler seed");
  lda->add_option("--out", lda_args.out, "model output path");

  TrainLmArgs lm_args;
  auto* lm = app.add_subcommand("train-lm", "fit the n-gram language model");
  lm->add_option("--corpus", lm_args.corpus, "training corpus artifact")->required();
  lm->add_option("--vocab", lm_args.vocab, "vocabulary artifact")->required();
  lm->add_option("--order", lm_args.order, "n-gram order");
  lm->add_option("--add-k", lm_args.add_k, "smoothing constant");
  lm->add_option("--out", lm_args.out, "model output path");

  StyleArgs style_args;
  auto* style = app.add_subcommand("style", "derive the corpus style weight");
  style->add_option("--model", style_args.model, "topic model artifact")->required();
  style->add_option("--out", style_args.out, "style weight output path");
  style->add_option("--align-vocab", style_args.align_vocab,
                    "emit the weight aligned onto this vocabulary");

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "beam-search comment generation");
  gen->add_option("--lm", gen_args.lm, "language model artifact")->required();
  gen->add_option("--style", gen_args.style, "style weight artifact");
  gen->add_option("--beam", gen_args.beam, "beam width");
  gen->add_option("--max-len", gen_args.max_len, "maximum output length");
  gen->add_option("--n", gen_args.n, "number of outputs");
  gen->add_option("--lambda", gen_args.lambda, "style strength exponent");
  gen->add_flag("--no-style", gen_args.no_style, "decode without the style weight");
  gen->add_flag("--length-normalize", gen_args.length_normalize,
                "rank hypotheses by score/length");
  gen->add_option("--out", gen_args.out, "write outputs here instead of stdout");

  EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "diversity + BLEU report");
  eval->add_option("--ref", eval_args.ref, "reference corpus")->required();
  eval->add_option("--gen", eval_args.gen, "generated corpus")->required();
  eval->add_option("--tags", eval_args.ref_tags, "external reference tags");
  eval->add_option("--gen-tags", eval_args.gen_tags, "external generated tags");
  eval->add_option("--out", eval_args.out, "report output path");

  PipelineConfig pcfg;
  std::string pipeline_config_path;
  auto* pipe = app.add_subcommand("pipeline", "run every stage from one config");
  pipe->add_option("--config", pipeline_config_path, "key=value config file");
  pipe->add_option("--input", pcfg.input, "raw comments input");
  pipe->add_option("--out-dir", pcfg.out_dir, "output directory");
  pipe->add_option("--min-freq", pcfg.min_freq, "frequency threshold");
  pipe->add_option("--max-len", pcfg.max_len, "comment length cap");
  pipe->add_option("--train-frac", pcfg.train_frac, "training fraction");
  pipe->add_option("--valid-frac", pcfg.valid_frac, "validation fraction");
  pipe->add_option("--test-frac", pcfg.test_frac, "test fraction");
  pipe->add_option("--split-seed", pcfg.split_seed, "split seed");
  pipe->add_option("--k", pcfg.k, "topic count");
  pipe->add_option("--alpha", pcfg.alpha, "doc-topic prior (0 = 5/k)");
  pipe->add_option("--beta", pcfg.beta, "topic-word prior");
  pipe->add_option("--iterations", pcfg.iterations, "Gibbs sweeps");
  pipe->add_option("--burn-in", pcfg.burn_in, "sweeps before estimation");
  pipe->add_option("--lda-seed", pcfg.lda_seed, "sampler seed");
  pipe->add_option("--order", pcfg.order, "n-gram order");
  pipe->add_option("--add-k", pcfg.add_k, "smoothing constant");
  pipe->add_option("--beam", pcfg.beam, "beam width");
  pipe->add_option("--gen-max-len", pcfg.gen_max_len, "maximum output length");
  pipe->add_option("--n", pcfg.n_outputs, "number of outputs");
  pipe->add_option("--lambda", pcfg.lambda, "style strength exponent");
  pipe->add_flag("--no-style", pcfg.no_style, "decode without the style weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (lda->parsed()) return run_train_lda(lda_args);
    if (lm->parsed()) return run_train_lm(lm_args);
    if (style->parsed()) return run_style(style_args);
    if (gen->parsed()) return run_generate(gen_args);
    if (eval->parsed()) return run_evaluate(eval_args);
    if (pipe->parsed()) {
      if (!pipeline_config_path.empty()) {
        apply_pipeline_config(pipeline_config_path, *pipe, pcfg);
      }
      const PipelineResult result = run_pipeline(pcfg);
      std::cout << "report: dic_rate " << result.report.dic_rate << "  wf_kl "
                << result.report.wf_kl << "  pos_kl " << result.report.pos_kl
                << "  bleu4 " << result.report.bleu4 << "\n"
                << "artifacts in " << pcfg.out_dir << "\n";
      return 0;
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
