#pragma once

#include <string>
#include <vector>

namespace circlepack::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,     // bad flags, unreadable input, unwritable output
    kNoResult = 2,  // solve: nothing feasible in time; verify: violations found
};

/// Entry point behind the `circlepack` executable.
int run(int argc, char** argv);

/// Same as above with argv[0] omitted; handy for in-process tests.
int run(const std::vector<std::string>& args);

}  // namespace circlepack::cli
