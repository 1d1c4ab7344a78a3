#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifslab::cli {

/// Entry point of the ifslab tool. Returns the process exit code: 0 expected
/// verdict, 2 contrary verdict, 3 inconclusive, 64 usage or config error,
/// 70 runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifslab::cli
