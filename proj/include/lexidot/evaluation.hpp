#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidot/dot.hpp"
#include "lexidot/inventory.hpp"
#include "lexidot/io.hpp"
#include "lexidot/pairs.hpp"
#include "lexidot/scoring.hpp"

namespace lexidot {

/// Fraction of positions where the prediction equals the gold label. A
/// missing prediction (discarded or unscored instance) or a missing gold
/// counts as incorrect. Throws ArgumentError on empty or unequal inputs.
double accuracy(std::span<const std::optional<std::string>> predictions,
                std::span<const std::optional<std::string>> golds);

enum class Complexity { Simple, Complex };
std::string_view to_string(Complexity c) noexcept;

inline constexpr std::size_t kSimpleMaxSenses = 10;

/// Simple iff the lemma has at most ten senses in the inventory.
Complexity complexity_of(std::string_view lemma, const SenseInventory& inv);
std::vector<Complexity> bucket_by_complexity(std::span<const TestInstance> instances, const SenseInventory& inv);

/// Three-way POS split used in WSD reports; proper nouns fold into Other.
enum class PosBucket { Noun, Verb, Other };
std::string_view to_string(PosBucket b) noexcept;
PosBucket pos_bucket(std::string_view pos_raw, const PosMap& pos_map = {});

// ---------------------------------------------------------------------------
// Baselines

struct RandomCase {
  std::size_t candidates = 0;
  bool gold_present = true;
};

struct RandomBaseline {
  double analytic = 0.0;     // mean of 1/|candidates| over cases whose gold is offered
  double monte_carlo = 0.0;  // mean accuracy over `trials` seeded sweeps
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Uniform-guess baseline, both in closed form and by simulation. Throws
/// ArgumentError when a case has no candidates or there are no cases.
RandomBaseline baseline_random(std::span<const RandomCase> cases, std::uint64_t seed, std::size_t trials);

/// (key, label) observation from a training split. The key is the lemma for
/// WSD and the dot-object name for RP.
struct LabeledItem {
  std::string key;
  std::string label;
};

/// Most-frequent-sense table learned from training labels. A lemma gets a
/// prediction only when some sense occurs at least twice; ties go to the
/// inventory order (or lexicographic order without an inventory).
std::map<std::string, std::string> train_mfs(std::span<const LabeledItem> train, const SenseInventory* inv);

/// MFS accuracy on `test`; lemmas without an MFS prediction count as wrong.
double baseline_mfs(std::span<const LabeledItem> train, std::span<const LabeledItem> test,
                    const SenseInventory* inv = nullptr);

/// Majority type class per dot object, ties in the dot object's class order.
std::map<std::string, std::string> train_mostfreq(std::span<const LabeledItem> train);

struct MostFreqResult {
  double overall = 0.0;
  std::map<std::string, double> per_dot_object;
};

/// Per-dot-object majority baseline for regular polysemy.
MostFreqResult baseline_mostfreq_rp(std::span<const LabeledItem> train, std::span<const LabeledItem> test);

// ---------------------------------------------------------------------------
// Reports

/// Everything the report needs to know about one evaluated instance.
struct EvalRecord {
  std::string instance_id;
  Task task = Task::Wsd;
  std::string lemma;
  std::string pos_raw;
  std::optional<std::string> gold;
  std::optional<std::string> predicted;
  OutcomeStatus status = OutcomeStatus::Scored;
  std::size_t candidates = 0;
  bool gold_in_candidates = false;
  std::string dot_object;  // RP only
};

EvalRecord make_record(const TestInstance& inst, const Disambiguation& d, const DotRegistry* reg);

struct BucketStats {
  std::size_t count = 0;
  std::size_t correct = 0;
  double random_sum = 0.0;
  std::size_t baseline_correct = 0;  // MFS for WSD, MostFreq for RP

  BucketStats& operator+=(const BucketStats& o) noexcept;
  double accuracy() const noexcept { return count ? static_cast<double>(correct) / count : 0.0; }
  double random() const noexcept { return count ? random_sum / count : 0.0; }
  double baseline() const noexcept { return count ? static_cast<double>(baseline_correct) / count : 0.0; }
};

struct EvalOptions {
  std::string condition;  // pos-guided | all-senses | dotted | all-types
  std::string backend;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  PosMap pos_map;
};

struct EvalReport {
  Task task = Task::Wsd;
  EvalOptions options;
  BucketStats overall;
  std::map<std::string, BucketStats> buckets;
  std::size_t discarded = 0;
  std::size_t backend_failed = 0;
  std::size_t gold_not_offered = 0;
  RandomBaseline random;
  bool has_train = false;

  double accuracy() const noexcept { return overall.accuracy(); }
  Json to_json() const;
};

/// Aggregates per-instance records into a report. `train` feeds the MFS
/// (WSD) or MostFreq (RP) baseline; with no training items that baseline is
/// reported as null. Records must all belong to one task.
EvalReport build_report(std::span<const EvalRecord> records, const EvalOptions& opts,
                        std::span<const LabeledItem> train, const SenseInventory* inv, const DotRegistry* reg);

/// Training observations from labelled instances.
std::vector<LabeledItem> training_items(std::span<const TestInstance> instances, const DotRegistry* reg);

/// Runs `scorer` over `instances` and reports. WSD instances use
/// opts.wsd_mode, RP instances opts.rp_mode.
EvalReport evaluate(std::span<const TestInstance> instances, const SenseInventory* inv, const DotRegistry* reg,
                    Scorer& scorer, const BuildOptions& build, const EvalOptions& opts,
                    std::span<const LabeledItem> train = {});

/// Dotted restricts candidates to the lemma's dot object; AllTypes offers all
/// eight type classes.
EvalReport evaluate_rp(std::span<const TestInstance> instances, const DotRegistry& reg, RpMode mode, Scorer& scorer,
                       std::uint64_t seed = 0, std::span<const LabeledItem> train = {});

}  // namespace lexidot
