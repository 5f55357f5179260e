#pragma once

#include <string>
#include <vector>

namespace simt {

/// Entry point for the `simt` command-line tool: curate, simulate, evaluate
/// and curve subcommands. Returns the process exit status.
int run_cli(int argc, const char* const* argv);

/// Convenience overload for driving the CLI from tests.
int run_cli(const std::vector<std::string>& args);

}  // namespace simt
