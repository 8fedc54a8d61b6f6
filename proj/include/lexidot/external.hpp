#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

#include "lexidot/scoring.hpp"

namespace lexidot {

inline constexpr std::string_view kScorerProtocol = "lexidot-scorer/1";

/// Serial request/response session with a scorer subprocess speaking JSON
/// Lines over its stdin/stdout:
///
///   backend:  {"protocol": "lexidot-scorer/1"}            (once, first)
///   request:  {"id": N, "pairs": [{"context": .., "gloss": ..}, ..]}
///   response: {"id": N, "scores": [..]}   or   {"id": N, "error": ".."}
///
/// A response whose id is below the pending request belongs to a request
/// that already timed out and is skipped. Length mismatches and error
/// records fail only the current request; EOF or garbage on the stream
/// breaks the session for good.
class ExternalScorer final : public Scorer {
 public:
  using Clock = std::chrono::steady_clock;

  /// Runs `command` through /bin/sh -c and waits for the handshake.
  explicit ExternalScorer(std::string command, std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~ExternalScorer() override;

  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  ScoreVector score(std::span<const ContextGlossPair> pairs) override;
  std::string name() const override { return "external"; }

  bool healthy() const noexcept { return !broken_; }
  std::int64_t requests_sent() const noexcept { return next_id_; }

 private:
  std::string read_line(Clock::time_point deadline);
  void write_all(std::string_view data);
  void shutdown_child() noexcept;

  std::string command_;
  std::chrono::milliseconds timeout_;
  int fd_ = -1;
  pid_t pid_ = -1;
  std::string buffer_;
  std::int64_t next_id_ = 0;
  bool broken_ = false;
};

}  // namespace lexidot
