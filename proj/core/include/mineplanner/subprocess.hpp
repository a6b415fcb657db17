#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mineplanner {

struct ProcessResult {
  int exit_code = -1;      // valid when !signaled
  int signal = 0;          // terminating signal, 0 if exited
  bool timed_out = false;  // killed by us
  double wall_seconds = 0;
  std::optional<long> peak_rss_kb;
  std::string stdout_text;
  std::string stderr_text;
};

/// Resolves argv[0] against PATH unless it contains a slash. Throws ConfigError.
std::filesystem::path resolve_executable(const std::string& name);

/// Runs argv in its own process group with `cwd` as working directory; output goes
/// to files inside `cwd` and is read back. On timeout the whole group is killed.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                          double timeout_seconds);

/// Fresh directory under the system temp dir.
std::filesystem::path make_work_dir(const std::string& prefix);

}  // namespace mineplanner
