#include "stylecast/data_files.hpp"

#include <cstdlib>

namespace stylecast {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("STYLECAST_DATA_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(STYLECAST_DATA_DIR_DEFAULT);
}

std::filesystem::path emoticon_lexicon_path() { return data_dir() / "emoticons.txt"; }

std::filesystem::path tag_lexicon_path() { return data_dir() / "tag_lexicon.txt"; }

}  // namespace stylecast
