#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hpcode::harness {

struct RunSpec {
  std::string command;  // executed via /bin/sh -c
  std::map<std::string, std::string> env;  // added/overridden in the child
  std::vector<std::string> unset_env;      // removed from the child
  double timeout_s = 600.0;
  std::filesystem::path cwd;  // empty: inherit
};

struct RunResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string stdout_text;
  std::string stderr_text;
  double wall_s = 0.0;
};

// Runs the command, captures stdout/stderr, kills the whole process group
// on timeout.
RunResult run_command(const RunSpec& spec);

}  // namespace hpcode::harness
