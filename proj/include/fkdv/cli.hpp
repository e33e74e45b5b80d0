#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fkdv::cli {

enum ExitCode { kSuccess = 0, kCheckFailed = 1, kUsage = 2 };

// key=value lines; '#' starts a comment. Throws std::runtime_error on a
// malformed line.
std::map<std::string, std::string> read_config(std::istream& in);

// Entry point of the fkdv tool; args exclude the program name:
// {"profile"|"verify"|"stability"|"simulate", flags...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fkdv::cli
