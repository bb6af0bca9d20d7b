#pragma once

#include <string>
#include <vector>

namespace snnlab {

// Entry point behind the snnlab binary. Subcommands: train, attack-eval,
// gain-check, mppd-demo. Returns an ExitCode value.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace snnlab
