#pragma once
// Subcommand orchestration shared by the CLI and the python bindings.
// Exit codes: 0 pass, 1 validation/configuration error, 2 numerical failure.

#include "fsistab/config.hpp"

#include <string>

namespace fsistab {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

// name in {simulate, spectrum, nullspace, decay, diagnose, selftest};
// diagnostics go to stderr, artifacts to cfg.out_dir.
int run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace fsistab
