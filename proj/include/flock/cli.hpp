#pragma once

namespace flock {

/* Command-line entry point. Subcommands: certify, simulate, sweep,
 * robustness. Exit status: 0 success, 1 certify verdict other than
 * certified, 2 input or usage errors. */
int run_command(int argc, const char* const* argv);

}  // namespace flock
