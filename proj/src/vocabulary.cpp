#include "stylecast/vocabulary.hpp"

#include <algorithm>

#include "stylecast/errors.hpp"
#include "stylecast/hash.hpp"
#include "stylecast/json_io.hpp"

namespace stylecast {

const std::string& Vocabulary::bos_surface() {
  static const std::string s = "<bos>";
  return s;
}
const std::string& Vocabulary::eos_surface() {
  static const std::string s = "<eos>";
  return s;
}
const std::string& Vocabulary::unk_surface() {
  static const std::string s = "<unk>";
  return s;
}

bool Vocabulary::is_special_surface(std::string_view s) {
  return s == bos_surface() || s == eos_surface() || s == unk_surface();
}

Vocabulary Vocabulary::from_counts(const std::map<std::string, std::int64_t>& counts,
                                   int min_freq) {
  if (min_freq < 1) throw DataError("min_freq must be >= 1");
  Vocabulary v;
  v.min_freq_ = min_freq;
  v.tokens_ = {bos_surface(), eos_surface(), unk_surface()};
  v.freqs_ = {0, 0, 0};

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [surface, count] : counts) {
    if (is_special_surface(surface)) {
      throw DataError("reserved token in vocabulary counts: " + surface);
    }
    if (count >= min_freq) kept.emplace_back(surface, count);
  }
  // Descending frequency, then lexicographic: a stable, reproducible order.
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& [surface, count] : kept) {
    v.tokens_.push_back(std::move(surface));
    v.freqs_.push_back(count);
  }
  v.rebuild_index();
  return v;
}

void Vocabulary::rebuild_index() {
  index_.clear();
  index_.reserve(tokens_.size());
  for (TokenId id = 0; id < size(); ++id) {
    if (!index_.emplace(tokens_[static_cast<std::size_t>(id)], id).second) {
      throw DataError("duplicate token in vocabulary: " +
                      tokens_[static_cast<std::size_t>(id)]);
    }
  }
  Fnv1a64 h;
  h.update_u64(static_cast<std::uint64_t>(min_freq_));
  for (TokenId id = 0; id < size(); ++id) {
    h.update(tokens_[static_cast<std::size_t>(id)]);
    h.update("\x1f");
    h.update_u64(static_cast<std::uint64_t>(freqs_[static_cast<std::size_t>(id)]));
  }
  fingerprint_ = h.hex();
}

bool Vocabulary::contains(std::string_view surface) const {
  return index_.find(std::string(surface)) != index_.end();
}

std::optional<TokenId> Vocabulary::id_of(std::string_view surface) const {
  const auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::encode(std::string_view surface) const {
  const auto it = index_.find(std::string(surface));
  return it == index_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::surface(TokenId id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("token id out of range: " + std::to_string(id));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::int64_t Vocabulary::freq(TokenId id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("token id out of range: " + std::to_string(id));
  }
  return freqs_[static_cast<std::size_t>(id)];
}

nlohmann::json Vocabulary::to_json() const {
  return nlohmann::json{{"format_version", kFormatVersion},
                        {"min_freq", min_freq_},
                        {"tokens", tokens_},
                        {"freqs", freqs_},
                        {"fingerprint", fingerprint_}};
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
  require_format_version(j, "vocabulary");
  Vocabulary v;
  try {
    v.min_freq_ = j.at("min_freq").get<int>();
    v.tokens_ = j.at("tokens").get<std::vector<std::string>>();
    v.freqs_ = j.at("freqs").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("vocabulary: ") + e.what());
  }
  if (v.tokens_.size() != v.freqs_.size()) {
    throw DataError("vocabulary: tokens/freqs length mismatch");
  }
  if (v.tokens_.size() < 3 || v.tokens_[0] != bos_surface() ||
      v.tokens_[1] != eos_surface() || v.tokens_[2] != unk_surface()) {
    throw DataError("vocabulary: reserved tokens missing or misplaced");
  }
  v.rebuild_index();
  if (j.contains("fingerprint") &&
      j.at("fingerprint").get<std::string>() != v.fingerprint_) {
    throw DataError("vocabulary: fingerprint mismatch (file corrupted?)");
  }
  return v;
}

}  // namespace stylecast
