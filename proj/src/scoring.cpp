#include "lexidot/scoring.hpp"

#include <cmath>
#include <unordered_set>

#include "lexidot/error.hpp"
#include "lexidot/external.hpp"
#include "lexidot/hash.hpp"
#include "lexidot/utf8.hpp"

namespace lexidot {

namespace {

std::unordered_set<std::u32string> bigrams(std::string_view text, const PairFormat& fmt) {
  std::u32string cleaned;
  for (char32_t cp : utf8::decode(text)) {
    if (cp == fmt.open_marker || cp == fmt.close_marker || utf8::is_punctuation(cp) || utf8::is_space(cp)) continue;
    cleaned.push_back(cp);
  }
  std::unordered_set<std::u32string> out;
  for (std::size_t i = 0; i + 1 < cleaned.size(); ++i) out.insert(cleaned.substr(i, 2));
  return out;
}

}  // namespace

std::size_t overlap_score(std::string_view a, std::string_view b, const PairFormat& fmt) {
  auto sa = bigrams(a, fmt);
  auto sb = bigrams(b, fmt);
  if (sa.size() > sb.size()) std::swap(sa, sb);
  std::size_t shared = 0;
  for (const auto& bg : sa) shared += sb.contains(bg);
  return shared;
}

ScoreVector score_overlap(std::span<const ContextGlossPair> pairs, const PairFormat& fmt) {
  if (pairs.empty()) throw ArgumentError("cannot score an empty pair list");
  ScoreVector out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(static_cast<double>(overlap_score(p.context, p.gloss, fmt)));
  return out;
}

std::size_t select(std::span<const double> scores) {
  if (scores.empty()) throw ArgumentError("cannot select from an empty score vector");
  std::size_t best = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw ArgumentError("score " + std::to_string(i) + " is not finite");
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

ScoreVector RandomScorer::score(std::span<const ContextGlossPair> pairs) {
  ScoreVector out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto h = seeded_hash(seed_, p.context + '\x1f' + p.candidate_id);
    out.push_back(static_cast<double>(h >> 11) * 0x1.0p-53);
  }
  return out;
}

ScoreVector OracleScorer::score(std::span<const ContextGlossPair> pairs) {
  ScoreVector out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.label ? 1.0 : 0.0);
  return out;
}

std::unique_ptr<Scorer> make_scorer(std::string_view spec, std::uint64_t seed, const PairFormat& fmt) {
  if (spec == "overlap") return std::make_unique<OverlapScorer>(fmt);
  if (spec == "random") return std::make_unique<RandomScorer>(seed);
  if (spec == "oracle") return std::make_unique<OracleScorer>();
  if (spec.starts_with("external:")) {
    const auto command = spec.substr(9);
    if (command.empty()) throw ArgumentError("external backend needs a command");
    return std::make_unique<ExternalScorer>(std::string(command));
  }
  throw ArgumentError("unknown backend \"" + std::string(spec) + "\"");
}

std::string_view to_string(OutcomeStatus s) noexcept {
  switch (s) {
    case OutcomeStatus::Scored: return "scored";
    case OutcomeStatus::Discarded: return "discarded";
    case OutcomeStatus::BackendFailed: return "backend-failed";
  }
  return "scored";
}

std::optional<OutcomeStatus> parse_outcome_status(std::string_view s) noexcept {
  for (auto st : {OutcomeStatus::Scored, OutcomeStatus::Discarded, OutcomeStatus::BackendFailed})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

Disambiguation disambiguate(const TestInstance& inst, const PairSet& set, Scorer& scorer) {
  Disambiguation d;
  d.instance_id = inst.id;
  d.build = set.status;
  if (set.discarded()) {
    d.status = OutcomeStatus::Discarded;
    return d;
  }
  for (const auto& p : set.pairs) d.candidates.push_back(p.candidate_id);
  try {
    d.scores = scorer.score(set.pairs);
    if (d.scores.size() != set.pairs.size())
      throw BackendError("scorer returned " + std::to_string(d.scores.size()) + " scores for " +
                         std::to_string(set.pairs.size()) + " pairs");
    d.predicted = d.candidates[select(d.scores)];
  } catch (const BackendError& e) {
    d.status = OutcomeStatus::BackendFailed;
    d.scores.clear();
    d.error = e.what();
  } catch (const ArgumentError& e) {
    d.status = OutcomeStatus::BackendFailed;
    d.scores.clear();
    d.error = e.what();
  }
  return d;
}

Disambiguation disambiguate(const TestInstance& inst, const SenseInventory* inv, const DotRegistry* reg,
                            Scorer& scorer, const BuildOptions& opts) {
  PairSet set;
  if (inst.task == Task::Wsd) {
    if (!inv) throw LookupError("instance " + inst.id + " needs a sense inventory");
    set = build_wsd_pairs(inst, *inv, opts.wsd_mode, opts.seed, opts.format, opts.pos_map);
  } else {
    if (!reg) throw LookupError("instance " + inst.id + " needs a dot registry");
    set = build_rp_pairs(inst, *reg, opts.rp_mode, opts.format);
  }
  return disambiguate(inst, set, scorer);
}

}  // namespace lexidot
