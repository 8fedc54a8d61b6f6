#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidot/pairs.hpp"

namespace lexidot {

/// One finite score per pair, index-aligned with the pair set it scores.
using ScoreVector = std::vector<double>;

/// Number of distinct character bigrams shared by `a` and `b` once the target
/// markers, punctuation and whitespace are removed. Symmetric.
std::size_t overlap_score(std::string_view a, std::string_view b, const PairFormat& fmt = {});

/// Lesk-style baseline: overlap_score(context, gloss) for every pair. Throws
/// ArgumentError on an empty pair list.
ScoreVector score_overlap(std::span<const ContextGlossPair> pairs, const PairFormat& fmt = {});

/// Argmax with ties going to the lowest index. Throws ArgumentError when
/// empty or when a score is not finite.
std::size_t select(std::span<const double> scores);

/// Scoring backend. Overlap, random and oracle scorers are stateless and safe
/// to share between threads; an external session is a serial channel.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual ScoreVector score(std::span<const ContextGlossPair> pairs) = 0;
  virtual std::string name() const = 0;
};

class OverlapScorer final : public Scorer {
 public:
  explicit OverlapScorer(PairFormat fmt = {}) : fmt_(std::move(fmt)) {}
  ScoreVector score(std::span<const ContextGlossPair> pairs) override { return score_overlap(pairs, fmt_); }
  std::string name() const override { return "overlap"; }

 private:
  PairFormat fmt_;
};

/// Uniform scores in [0, 1) keyed on (seed, context, candidate), so a pair
/// receives the same score whatever order it is scored in.
class RandomScorer final : public Scorer {
 public:
  explicit RandomScorer(std::uint64_t seed) : seed_(seed) {}
  ScoreVector score(std::span<const ContextGlossPair> pairs) override;
  std::string name() const override { return "random"; }

 private:
  std::uint64_t seed_;
};

/// 1.0 for the gold-labelled pair, 0.0 elsewhere. Upper bound of any scorer.
class OracleScorer final : public Scorer {
 public:
  ScoreVector score(std::span<const ContextGlossPair> pairs) override;
  std::string name() const override { return "oracle"; }
};

/// Builds a scorer from its command-line spelling:
/// overlap | random | oracle | external:<command>.
/// Throws ArgumentError for an unknown kind and BackendError when an external
/// scorer fails its handshake.
std::unique_ptr<Scorer> make_scorer(std::string_view spec, std::uint64_t seed, const PairFormat& fmt = {});

enum class OutcomeStatus { Scored, Discarded, BackendFailed };

std::string_view to_string(OutcomeStatus s) noexcept;
std::optional<OutcomeStatus> parse_outcome_status(std::string_view s) noexcept;

struct Disambiguation {
  std::string instance_id;
  OutcomeStatus status = OutcomeStatus::Scored;
  BuildStatus build = BuildStatus::Ok;
  std::optional<std::string> predicted;
  std::vector<std::string> candidates;
  ScoreVector scores;
  std::string error;
};

/// Builds the instance's pairs, scores them and picks the winner. A
/// discarded instance or a backend failure is reported in the result rather
/// than thrown; lookup and span errors propagate.
Disambiguation disambiguate(const TestInstance& inst, const SenseInventory* inv, const DotRegistry* reg,
                            Scorer& scorer, const BuildOptions& opts);

Disambiguation disambiguate(const TestInstance& inst, const PairSet& pairs, Scorer& scorer);

}  // namespace lexidot
