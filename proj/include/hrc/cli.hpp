#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hrc::cli {

// Exit codes: 0 success, 1 "none" or violations found, 2 usage/format/classification/budget error,
// 3 a result failed its own stability check.
enum Exit { kOk = 0, kFound = 1, kUsage = 2, kInternal = 3 };

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace hrc::cli
