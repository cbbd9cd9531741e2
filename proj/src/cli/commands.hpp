#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "haarlab/topgroup.hpp"

namespace haarlab::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::string input_path;
  /// Empty: write to the `out` stream.
  std::string output_path;
  std::size_t max_order = kMaxGroupOrder;
  /// Overrides the "probe_bound" field of a counterexample input.
  std::optional<std::string> probe_bound;
  /// Worker threads; 0 means one per hardware thread. Output never depends on it.
  std::size_t jobs = 1;
};

/// Largest atom count for which `construct` emits its full covering table.
inline constexpr std::size_t kMaxConstructAtoms = 8;

/// Runs one command and writes its JSON report; returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace haarlab::cli
