#pragma once

#include <filesystem>

namespace stylecast {

// Directory holding the shipped lexicons (emoticons, tag lexicon) and the
// bundled sample corpus. STYLECAST_DATA_DIR overrides the compiled-in
// default.
std::filesystem::path data_dir();

std::filesystem::path emoticon_lexicon_path();
std::filesystem::path tag_lexicon_path();

}  // namespace stylecast
