#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace stylecast {

using TokenId = std::int32_t;

// Bidirectional token <-> id map with training-split frequencies.
// Ids are dense. The three reserved tokens sit at fixed ids; content
// tokens follow, ordered by descending frequency then lexicographically,
// which makes vocabulary files reproducible byte for byte.
class Vocabulary {
 public:
  Vocabulary() = default;  // empty; fill via from_counts or from_json

  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;
  static constexpr TokenId kFirstWord = 3;

  static const std::string& bos_surface();
  static const std::string& eos_surface();
  static const std::string& unk_surface();
  static bool is_special_surface(std::string_view s);

  // Counts must not contain the reserved surfaces. Entries below min_freq
  // are dropped.
  static Vocabulary from_counts(const std::map<std::string, std::int64_t>& counts,
                                int min_freq);

  static Vocabulary from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  TokenId size() const { return static_cast<TokenId>(tokens_.size()); }
  // Number of non-reserved tokens.
  TokenId word_count() const { return size() - kFirstWord; }

  bool contains(std::string_view surface) const;
  std::optional<TokenId> id_of(std::string_view surface) const;
  // Unknown surfaces map to kUnk.
  TokenId encode(std::string_view surface) const;
  const std::string& surface(TokenId id) const;  // throws on out-of-range
  std::int64_t freq(TokenId id) const;
  bool is_special(TokenId id) const { return id >= 0 && id < kFirstWord; }

  int min_freq() const { return min_freq_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  void rebuild_index();

  std::vector<std::string> tokens_;
  std::vector<std::int64_t> freqs_;
  std::unordered_map<std::string, TokenId> index_;
  int min_freq_ = 0;
  std::string fingerprint_;
};

}  // namespace stylecast
