#include "hpcode/harness/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <stdexcept>

namespace hpcode::harness {

RunResult run_command(const RunSpec& spec) {
  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
    throw std::runtime_error("pipe() failed");

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork() failed");

  if (pid == 0) {
    setpgid(0, 0);  // own process group so a timeout kill reaps children
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    if (!spec.cwd.empty() && chdir(spec.cwd.c_str()) != 0) _exit(127);
    for (const auto& name : spec.unset_env) unsetenv(name.c_str());
    for (const auto& [name, value] : spec.env)
      setenv(name.c_str(), value.c_str(), 1);
    execl("/bin/sh", "sh", "-c", spec.command.c_str(), (char*)nullptr);
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  RunResult result;
  auto deadline = start + std::chrono::duration<double>(spec.timeout_s);
  bool out_open = true, err_open = true;

  auto drain = [&](int fd, std::string& sink) {
    char buf[4096];
    for (;;) {
      ssize_t n = read(fd, buf, sizeof(buf));
      if (n > 0) {
        sink.append(buf, (size_t)n);
      } else if (n == 0) {
        return false;  // closed
      } else {
        return errno == EAGAIN || errno == EWOULDBLOCK;
      }
    }
  };

  while (out_open || err_open) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      result.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    int remaining_ms = (int)std::chrono::duration_cast<std::chrono::milliseconds>(
                           deadline - now)
                           .count();
    struct pollfd fds[2];
    nfds_t nfds = 0;
    if (out_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[nfds++] = {err_pipe[0], POLLIN, 0};
    poll(fds, nfds, std::min(remaining_ms + 1, 1000));
    if (out_open) out_open = drain(out_pipe[0], result.stdout_text);
    if (err_open) err_open = drain(err_pipe[0], result.stderr_text);
  }
  // Pipes closed or timed out; collect the exit status.
  int status = 0;
  waitpid(pid, &status, 0);
  auto end = std::chrono::steady_clock::now();
  result.wall_s = std::chrono::duration<double>(end - start).count();

  drain(out_pipe[0], result.stdout_text);
  drain(err_pipe[0], result.stderr_text);
  close(out_pipe[0]);
  close(err_pipe[0]);

  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  return result;
}

}  // namespace hpcode::harness
