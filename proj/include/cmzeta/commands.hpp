#pragma once

// The subcommands of the command-line tool.  Each writes its report to
// cfg.out (or `out` when empty), warnings to `err`, and returns the exit
// code: 0 ok, 1 verification failure, 2 configuration error, 3 internal
// inconsistency.

#include <iosfwd>
#include <string>
#include <vector>

#include "cmzeta/config.hpp"

namespace cmzeta {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_inconsistent = 3 };

int cmd_expand(JobConfig cfg, std::ostream &out, std::ostream &err);
int cmd_classify(JobConfig cfg, std::ostream &out, std::ostream &err);
int cmd_verify(JobConfig cfg, std::ostream &out, std::ostream &err);
int cmd_solve_mu(JobConfig cfg, std::ostream &out, std::ostream &err);
int cmd_recover(JobConfig cfg, std::ostream &out, std::ostream &err);
int cmd_analytic(JobConfig cfg, std::ostream &out, std::ostream &err);

std::vector<std::string> command_names();

/// Dispatches by name and maps exceptions to exit codes.
int run_command(const std::string &name, const JobConfig &cfg, std::ostream &out, std::ostream &err);

} // namespace cmzeta
