#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "stylecast/metrics.hpp"

namespace stylecast {

// Everything the end-to-end run needs, fed from a key=value config file
// with command-line overrides.
struct PipelineConfig {
  std::string input;  // raw comments: JSON Lines or plain text
  std::string out_dir = "out";
  int min_freq = 5;
  int max_len = 20;
  double train_frac = 0.8;
  double valid_frac = 0.1;
  double test_frac = 0.1;
  std::uint64_t split_seed = 42;
  int k = 3;
  double alpha = 0.0;  // 0 -> 5/k
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 200;
  std::uint64_t lda_seed = 1;
  int order = 3;
  double add_k = 0.1;
  int beam = 3;
  int gen_max_len = 20;
  int n_outputs = 5;
  double lambda = 1.0;
  bool no_style = false;
};

struct PipelineResult {
  std::filesystem::path vocab_path;
  std::filesystem::path train_path, valid_path, test_path;
  std::filesystem::path model_path, style_path, lm_path;
  std::filesystem::path generated_path, report_path;
  DiversityReport report;
};

// Runs ingest -> topic training -> style weight -> language model ->
// generation -> evaluation, writing versioned artifacts plus a run
// manifest beside each one. Outputs are a pure function of (input bytes,
// config); rerunning with the same config reproduces them byte for byte.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Writes <artifact>.manifest.json recording the command, resolved
// parameters, input digests, and outputs of one stage.
void write_manifest(const std::filesystem::path& artifact_path,
                    const std::string& command, const nlohmann::json& parameters,
                    const std::vector<std::filesystem::path>& inputs,
                    const std::vector<std::filesystem::path>& outputs,
                    double duration_seconds);

}  // namespace stylecast
