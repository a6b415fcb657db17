#include "mineplanner/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "mineplanner/error.hpp"

namespace mineplanner {

namespace fs = std::filesystem;

namespace {

bool is_executable(const fs::path& p) {
  struct stat st {};
  return ::stat(p.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(p.c_str(), X_OK) == 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

fs::path resolve_executable(const std::string& name) {
  if (name.empty()) throw ConfigError("empty executable name");
  if (name.find('/') != std::string::npos) {
    if (!is_executable(name)) throw ConfigError("planner executable not found: " + name);
    return fs::absolute(name);
  }
  const char* path = std::getenv("PATH");
  std::stringstream dirs(path ? path : "");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    const auto candidate = fs::path(dir) / name;
    if (is_executable(candidate)) return candidate;
  }
  throw ConfigError("planner executable not found on PATH: " + name);
}

fs::path make_work_dir(const std::string& prefix) {
  std::string tmpl = (fs::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!::mkdtemp(tmpl.data())) throw ConfigError("cannot create work directory: " + std::string(std::strerror(errno)));
  return tmpl;
}

ProcessResult run_process(const std::vector<std::string>& argv, const fs::path& cwd, double timeout_seconds) {
  if (argv.empty()) throw ConfigError("empty command");
  const fs::path exe = resolve_executable(argv[0]);
  const fs::path out_path = cwd / "stdout.txt";
  const fs::path err_path = cwd / "stderr.txt";

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw ConfigError("fork failed: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    ::setpgid(0, 0);
    if (::chdir(cwd.c_str()) != 0) ::_exit(126);
    const int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int err = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int in = ::open("/dev/null", O_RDONLY);
    if (out < 0 || err < 0 || in < 0) ::_exit(126);
    ::dup2(in, 0);
    ::dup2(out, 1);
    ::dup2(err, 2);
    ::execv(exe.c_str(), args.data());
    ::_exit(127);
  }
  // Both sides set the group to avoid racing the child's setpgid.
  ::setpgid(pid, pid);

  ProcessResult result;
  const auto deadline = start + std::chrono::duration<double>(timeout_seconds);
  int status = 0;
  struct rusage usage {};
  for (;;) {
    const pid_t r = ::wait4(pid, &status, WNOHANG, &usage);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw ConfigError("wait failed: " + std::string(std::strerror(errno)));
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      while (::wait4(pid, &status, 0, &usage) < 0 && errno == EINTR) {
      }
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  // Stray grandchildren must not outlive the run.
  ::kill(-pid, SIGKILL);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  if (WIFSIGNALED(status)) result.signal = WTERMSIG(status);
  if (usage.ru_maxrss > 0) result.peak_rss_kb = usage.ru_maxrss;
  result.stdout_text = slurp(out_path);
  result.stderr_text = slurp(err_path);
  return result;
}

}  // namespace mineplanner
