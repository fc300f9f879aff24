#pragma once

#include <string>
#include <vector>

namespace twistsig::cli {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name. Usage errors exit 2,
/// domain errors 1 with the library message on stderr.
Outcome parse_and_dispatch(const std::vector<std::string>& args);

}  // namespace twistsig::cli
