#pragma once

#include <string>
#include <vector>

namespace ponpar {

// Command-line driver, exposed so tests can run it in-process.
// Exit codes: 0 all requested experiments passed, 1 at least one failed,
// 2 unknown experiment or challenge id, 3 unwritable output directory.
int runCli(int argc, const char* const* argv);

// Convenience overload; args exclude the program name.
int runCli(const std::vector<std::string>& args);

}  // namespace ponpar
