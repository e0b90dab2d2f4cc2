#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace oetp::testing {

// Runs the CLI through the shell and returns its exit status, or -1 if it
// did not exit normally.
inline int run_cli(const std::string& args, const std::string& redirect = "> /dev/null 2>&1") {
  const std::string cmd = std::string("\"") + OETP_CLI_PATH + "\" " + args + " " + redirect;
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

inline std::string quote(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace oetp::testing
