#pragma once

// Command-line front end. Parsing of argv lives in tools/; this library takes
// the parsed configuration so it can be driven from tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace iqc {

struct RunConfig {
  /// classify, closure, negat, steer, fic, sample or verify.
  std::string subcommand;
  /// JSON config file; required for classify, closure and negat.
  std::optional<std::string> config_path;
  std::optional<std::string> output_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> draws;
  std::optional<double> tol_rank;
  std::optional<double> tol_eq;
  /// closure: include the orthonormal basis in the output.
  bool basis = false;
};

/// Exit codes: 0 success (negative verdicts included), 1 malformed config,
/// 2 violated precondition. Results go to `out` (or the output file),
/// diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace iqc
