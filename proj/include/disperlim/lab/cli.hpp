#pragma once

namespace disperlim::lab {

/// Command-line front end. Exit codes: 0 success, 1 validation error
/// (including unknown subcommands and flags), 2 numerical failure.
int cli_main(int argc, char** argv);

}  // namespace disperlim::lab
