#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include "senscheck/subprocess.hpp"

namespace senscheck {

ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_seconds) {
  ProcessResult res;
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0) return res;
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return res;
  }

  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    return res;
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the whole pipeline can be killed
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }

  res.started = true;
  close(in_pipe[0]);
  close(out_pipe[1]);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_seconds);
  auto remaining_ms = [&]() {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    return left < 0 ? (long long)0 : (long long)left;
  };

  // Write the input without blocking forever on a full pipe.
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  size_t written = 0;
  bool write_open = true;
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);

  char buf[4096];
  bool out_open = true;
  while (out_open) {
    struct pollfd fds[2];
    int nfds = 0;
    int out_slot = -1, in_slot = -1;
    if (out_open) {
      fds[nfds] = {out_pipe[0], POLLIN, 0};
      out_slot = nfds++;
    }
    if (write_open && written < input.size()) {
      fds[nfds] = {in_pipe[1], POLLOUT, 0};
      in_slot = nfds++;
    } else if (write_open) {
      close(in_pipe[1]);
      write_open = false;
    }
    long long left = remaining_ms();
    if (left == 0) {
      res.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    int rc = poll(fds, nfds, (int)std::min<long long>(left, 200));
    if (rc < 0 && errno != EINTR) break;
    if (rc <= 0) continue;
    if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_slot].revents & (POLLERR | POLLHUP)) {
        close(in_pipe[1]);
        write_open = false;
      } else {
        ssize_t w = write(in_pipe[1], input.data() + written,
                          input.size() - written);
        if (w > 0)
          written += (size_t)w;
        else if (w < 0 && errno != EAGAIN && errno != EINTR) {
          close(in_pipe[1]);
          write_open = false;
        }
      }
    }
    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(out_pipe[0], buf, sizeof buf);
      if (r > 0)
        res.output.append(buf, (size_t)r);
      else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR))
        out_open = false;
    }
  }

  if (write_open) close(in_pipe[1]);
  // Drain whatever remains after exit or kill.
  for (;;) {
    ssize_t r = read(out_pipe[0], buf, sizeof buf);
    if (r > 0) {
      res.output.append(buf, (size_t)r);
      continue;
    }
    if (r < 0 && (errno == EAGAIN || errno == EINTR) && !res.timed_out) {
      struct pollfd pfd = {out_pipe[0], POLLIN, 0};
      if (poll(&pfd, 1, 50) > 0) continue;
    }
    break;
  }
  close(out_pipe[0]);

  int status = 0;
  if (res.timed_out) kill(-pid, SIGKILL);
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace senscheck
