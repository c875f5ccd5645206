#ifndef SENSCHECK_SUBPROCESS_HPP
#define SENSCHECK_SUBPROCESS_HPP

#include <string>

namespace senscheck {

struct ProcessResult {
  bool started = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string output;  // stdout only
};

/// Runs `command` through the shell, writing `input` to its stdin and
/// collecting stdout. Kills the process group after `timeout_seconds`.
/// Never throws.
ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_seconds);

}  // namespace senscheck

#endif
