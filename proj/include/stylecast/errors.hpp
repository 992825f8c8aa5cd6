#pragma once

#include <stdexcept>
#include <string>

namespace stylecast {

// Malformed inputs, missing files, incompatible artifacts. The CLI maps
// this to exit code 2; usage problems exit with 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylecast
