#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <string>
#include <thread>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "agentmem/errors.hpp"
#include "agentmem/evaluators.hpp"

namespace agentmem::eval::detail {

namespace {
constexpr std::size_t kMaxOutputBytes = 16 * 1024;
}

CommandResult run_command(const std::string& command, const std::filesystem::path& workdir,
                          double timeout_seconds) {
    int pipe_fds[2];
    if (pipe(pipe_fds) != 0) throw EvalError(std::string("pipe: ") + std::strerror(errno));

    const pid_t pid = fork();
    if (pid < 0) {
        close(pipe_fds[0]);
        close(pipe_fds[1]);
        throw EvalError(std::string("fork: ") + std::strerror(errno));
    }

    if (pid == 0) {
        // Child: own process group so a timeout can kill the whole tree.
        setpgid(0, 0);
        close(pipe_fds[0]);
        dup2(pipe_fds[1], STDOUT_FILENO);
        dup2(pipe_fds[1], STDERR_FILENO);
        close(pipe_fds[1]);
        if (chdir(workdir.c_str()) != 0) _exit(126);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(pipe_fds[1]);
    fcntl(pipe_fds[0], F_SETFL, O_NONBLOCK);

    CommandResult result;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_seconds));

    int status = 0;
    bool exited = false;
    char buffer[4096];
    while (true) {
        ssize_t got;
        while ((got = read(pipe_fds[0], buffer, sizeof buffer)) > 0) {
            if (result.output.size() < kMaxOutputBytes)
                result.output.append(buffer, static_cast<std::size_t>(
                                                 std::min<ssize_t>(got, static_cast<ssize_t>(
                                                                            kMaxOutputBytes -
                                                                            result.output.size()))));
        }
        const pid_t waited = waitpid(pid, &status, WNOHANG);
        if (waited == pid) {
            exited = true;
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) break;
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }

    if (!exited) {
        result.timed_out = true;
        kill(-pid, SIGKILL);
        waitpid(pid, &status, 0);
    }

    // Drain whatever remains.
    ssize_t got;
    while ((got = read(pipe_fds[0], buffer, sizeof buffer)) > 0) {
        if (result.output.size() < kMaxOutputBytes)
            result.output.append(buffer, static_cast<std::size_t>(std::min<ssize_t>(
                                             got, static_cast<ssize_t>(kMaxOutputBytes -
                                                                       result.output.size()))));
    }
    close(pipe_fds[0]);

    if (!result.timed_out) {
        if (WIFEXITED(status)) {
            result.exit_code = WEXITSTATUS(status);
            if (result.exit_code == 126 || result.exit_code == 127)
                throw EvalError("sandbox spawn failed (exit " + std::to_string(result.exit_code) +
                                "): " + command);
        } else if (WIFSIGNALED(status)) {
            result.exit_code = 128 + WTERMSIG(status);
        }
    }
    return result;
}

} // namespace agentmem::eval::detail
