#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace padic::cli {

enum ExitCode : int { kCertified = 0, kError = 1, kInconclusive = 2 };

struct RunConfig {
  std::string command;  ///< analyze | sweep | orbit | itinerary | julia | periodic | gibbs-check
  unsigned long p = 5;
  long q = 2;
  long k = 2;
  std::string theta = "6";
  bool theta_given = false;
  int precision = 64;
  int depth = 3;
  std::size_t samples = 32;
  std::uint64_t seed = 1;
  std::string format = "json";  ///< json | csv
  std::string out;              ///< empty: standard output
  int levels = 2;
  std::string coupling;  ///< J literal; empty means J = log_p(theta)
  std::string word;
  std::string x;
  int tmin = 1;
  int tmax = 3;
};

/// Validates the numeric parameters, dispatches and writes the document to
/// `out` (or config.out). Diagnostics go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the command as the first positional argument, then runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padic::cli
