#include "lexidot/external.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

ExternalScorer::ExternalScorer(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw BackendError(std::string("socketpair: ") + std::strerror(errno));

  pid_ = ::fork();
  if (pid_ < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw BackendError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid_ == 0) {
    // dup2 clears FD_CLOEXEC on the duplicates
    ::dup2(sv[1], STDIN_FILENO);
    ::dup2(sv[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(sv[1]);
  fd_ = sv[0];

  try {
    const auto line = read_line(Clock::now() + timeout_);
    Json hello;
    try {
      hello = Json::parse(line);
    } catch (const Json::parse_error&) {
      throw BackendError("scorer handshake is not JSON: " + line);
    }
    if (!hello.is_object() || hello.value("protocol", std::string{}) != kScorerProtocol)
      throw BackendError("scorer handshake mismatch: " + line);
  } catch (...) {
    shutdown_child();
    throw;
  }
}

ExternalScorer::~ExternalScorer() { shutdown_child(); }

void ExternalScorer::shutdown_child() noexcept {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_WR);
  }
  if (pid_ > 0) {
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) reaped = true;
      else std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

std::string ExternalScorer::read_line(Clock::time_point deadline) {
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) throw BackendError("scorer timed out");
    pollfd pfd{fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw BackendError(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) throw BackendError("scorer timed out");
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      broken_ = true;
      throw BackendError(std::string("read from scorer: ") + std::strerror(errno));
    }
    if (n == 0) {
      broken_ = true;
      throw BackendError("scorer closed its output");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void ExternalScorer::write_all(std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw BackendError(std::string("write to scorer: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

ScoreVector ExternalScorer::score(std::span<const ContextGlossPair> pairs) {
  if (broken_) throw BackendError("scorer session is broken");
  const std::int64_t id = next_id_++;
  Json req = {{"id", id}, {"pairs", Json::array()}};
  for (const auto& p : pairs) req["pairs"].push_back({{"context", p.context}, {"gloss", p.gloss}});
  write_all(req.dump() + '\n');

  const auto deadline = Clock::now() + timeout_;
  for (;;) {
    const auto line = read_line(deadline);
    Json resp;
    try {
      resp = Json::parse(line);
    } catch (const Json::parse_error&) {
      broken_ = true;
      throw BackendError("scorer sent a non-JSON line: " + line);
    }
    auto id_it = resp.find("id");
    if (!resp.is_object() || id_it == resp.end() || !id_it->is_number_integer()) {
      broken_ = true;
      throw BackendError("scorer response without an integer id: " + line);
    }
    const auto got = id_it->get<std::int64_t>();
    if (got < id) continue;  // late answer to a request that timed out
    if (got > id) {
      broken_ = true;
      throw BackendError("scorer answered id " + std::to_string(got) + " while " + std::to_string(id) + " is pending");
    }
    if (auto err = resp.find("error"); err != resp.end())
      throw BackendError("scorer error: " + (err->is_string() ? err->get<std::string>() : err->dump()));
    auto scores_it = resp.find("scores");
    if (scores_it == resp.end() || !scores_it->is_array()) throw BackendError("scorer response without scores");
    if (scores_it->size() != pairs.size())
      throw BackendError("length mismatch: " + std::to_string(scores_it->size()) + " scores for " +
                         std::to_string(pairs.size()) + " pairs");
    ScoreVector out;
    out.reserve(pairs.size());
    for (const auto& s : *scores_it) {
      if (!s.is_number() || !std::isfinite(s.get<double>())) throw BackendError("scorer returned a non-finite score");
      out.push_back(s.get<double>());
    }
    return out;
  }
}

}  // namespace lexidot
