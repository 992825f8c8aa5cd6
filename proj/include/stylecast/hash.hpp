#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace stylecast {

// FNV-1a (64-bit), used for vocabulary fingerprints and manifest digests.
// Not cryptographic; it only has to be stable and cheap.
class Fnv1a64 {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
  }

  void update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xff;
      state_ *= 0x100000001b3ULL;
    }
  }

  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string fnv1a64_hex(std::string_view bytes);
std::string to_hex(std::uint64_t v);

}  // namespace stylecast
