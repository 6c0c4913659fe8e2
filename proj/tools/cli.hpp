#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gisin/linalg.hpp"

namespace gisin::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string command; ///< analyze | sweep | random-trials | ppt | distill
  std::optional<std::string> state_spec;
  std::optional<std::string> file;
  double violation_tol = 1e-9;
  double concurrence_tol = 1e-7;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 0;
  Dims dims;
  std::size_t n = 1;
  std::string out = "-"; ///< "-" is stdout
  OutputFormat format = OutputFormat::Json;
  bool timestamp = true;
  bool settings_for_all = false;
  bool assert_separable = false;
  bool assert_entangled = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAssertion = 2;

/// Runs one command and writes its report. Returns kExitOk, kExitError (with a
/// diagnostic on `err`), or kExitAssertion when --assert-* fails.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run_command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gisin::cli
