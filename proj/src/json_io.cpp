#include "stylecast/json_io.hpp"

#include <fstream>
#include <sstream>

#include "stylecast/errors.hpp"
#include "stylecast/hash.hpp"

namespace stylecast {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error reading file: " + path.string());
  return buf.str();
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("malformed JSON in " + path.string());
  return j;
}

void write_text_atomic(const std::string& text, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << text;
    if (!out) throw DataError("error writing file: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_json_atomic(const nlohmann::json& j, const std::filesystem::path& path) {
  write_text_atomic(j.dump(2) + "\n", path);
}

void require_format_version(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("format_version")) {
    throw DataError(what + ": missing format_version");
  }
  const auto& v = j.at("format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    throw DataError(what + ": unsupported format_version " + v.dump());
  }
}

std::string file_digest_hex(const std::filesystem::path& path) {
  return fnv1a64_hex(read_text_file(path));
}

}  // namespace stylecast
