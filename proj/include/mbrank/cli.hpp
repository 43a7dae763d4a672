#pragma once

#include <ostream>

namespace mbrank {

/// Entry point of the `mbrank` tool (subcommands rank, synth, bench, score).
/// Returns the process exit code: 0 on success, 1 when a benchmark produced
/// error rows, 2 on bad input, missing files or write failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbrank
