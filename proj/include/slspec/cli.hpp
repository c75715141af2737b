// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slspec/spectrum.hpp"

namespace slspec::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 2;
inline constexpr int numerical_failure = 3;
inline constexpr int hypothesis_violation = 4;
}  // namespace exit_code

enum class OutputFormat { csv, json };

struct RunConfig {
  /// classify | scan | richardson | complex-scan | certify | drift
  std::string command;
  std::string problem_path;
  std::optional<Window> window;
  std::optional<Rect> rect;
  double tol = 1e-9;
  OutputFormat output = OutputFormat::csv;
  /// Empty writes to stdout.
  std::string output_path;
  /// Scan worker threads; 0 uses the machine parallelism.
  unsigned threads = 0;

  // certify
  std::string kind;
  std::optional<double> q0;
  std::optional<double> M;
  std::optional<double> mu;
  std::optional<double> lambda;
  std::optional<double> lambda_star;
  std::optional<double> c;
  std::optional<double> d;
  std::optional<double> e;
  /// prop3 per-gap values; searched automatically when empty.
  std::vector<double> mus;
  /// prop3 variant bounding λ⁻ from below.
  bool lower = false;

  // drift
  int zero_index = 1;
};

/// Dispatches one command. Results go to `out` (or the output file), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line (and SL_THREADS) into a RunConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slspec::cli
