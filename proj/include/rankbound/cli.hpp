#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rankbound {

/// Entry point of the command-line tool, exposed as a library function so
/// tests can run commands in-process and compare output bytes. args excludes
/// the program name. Returns the process exit code: 0 on success, 1 on
/// computational failure, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankbound
