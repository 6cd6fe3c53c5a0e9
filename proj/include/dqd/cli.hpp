// cli.hpp - `dqd` command-line front end
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dqd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: spectrum, populations, concurrence-map, fidelity, coherence,
/// validate, sweep. CSV goes to `out` unless --out is given; diagnostics go
/// to `err`. Exit 0 ok, 1 invariant failure, 2 bad flags/config.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace dqd
