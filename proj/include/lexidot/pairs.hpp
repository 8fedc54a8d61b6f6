#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidot/dot.hpp"
#include "lexidot/inventory.hpp"
#include "lexidot/pos.hpp"

namespace lexidot {

enum class Task { Wsd, Rp };
enum class WsdMode { PosGuided, AllSenses };
enum class RpMode { Dotted, AllTypes };

std::string_view to_string(Task t) noexcept;
std::string_view to_string(WsdMode m) noexcept;
std::string_view to_string(RpMode m) noexcept;

/// A sentence with exactly one target. Offsets count Unicode code points and
/// delimit the half-open range [start, end).
struct TestInstance {
  std::string id;
  std::string sentence;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string lemma;
  std::string pos_raw;
  std::optional<std::string> gold;
  Task task = Task::Wsd;

  friend bool operator==(const TestInstance&, const TestInstance&) = default;
};

/// Throws SpanError unless 0 <= start < end <= length and the span covers
/// exactly the lemma's surface form.
void validate(const TestInstance& inst);

/// JSONL: {"sentence", "start", "end", "lemma", "pos_raw", "gold", "task"}
/// plus an optional "instance_id" (defaults to the 0-based record index).
std::vector<TestInstance> load_instances(std::istream& in);
std::vector<TestInstance> load_instances(const std::filesystem::path& path);
void save_instances(std::ostream& out, std::span<const TestInstance> instances);

struct ContextGlossPair {
  std::string instance_id;
  std::string context;
  std::string gloss;
  std::string candidate_id;
  bool label = false;

  friend bool operator==(const ContextGlossPair&, const ContextGlossPair&) = default;
};

/// Typography of the generated sequences.
struct PairFormat {
  char32_t open_marker = U'〈';
  char32_t close_marker = U'〉';
  std::string target_separator = ":";
  std::string field_separator = "\xEF\xBC\x8C";  // U+FF0C
};

/// Wraps sentence[start, end) in the target markers. Throws SpanError for an
/// empty or out-of-range span.
std::string mark_target(std::string_view sentence, std::size_t start, std::size_t end, const PairFormat& fmt = {});

enum class BuildStatus {
  Ok,
  FellBack,   // POS filter left fewer than two senses; all senses used instead
  Discarded,  // lemma has fewer than two senses
};

std::string_view to_string(BuildStatus s) noexcept;

struct PairSet {
  std::vector<ContextGlossPair> pairs;
  BuildStatus status = BuildStatus::Ok;

  bool discarded() const noexcept { return status == BuildStatus::Discarded; }
  /// Index of the pair labelled true, if any.
  std::optional<std::size_t> gold_index() const noexcept;
};

/// Index of the example sentence drawn for a sense under `seed`.
std::size_t example_index(std::string_view sense_id, std::uint64_t seed, std::size_t n_examples) noexcept;

/// One pair per candidate sense, gloss = TGT:SENSE-DEF，SENSE-EX-SENT. The
/// example segment is omitted for senses without examples.
PairSet build_wsd_pairs(const TestInstance& inst, const SenseInventory& inv, WsdMode mode, std::uint64_t seed,
                        const PairFormat& fmt = {}, const PosMap& pos_map = {});

/// One pair per type class, gloss = TGT:RPCLASS，RPCLASS-GLOSS. Dotted uses
/// the lemma's dot object; AllTypes uses all eight classes.
PairSet build_rp_pairs(const TestInstance& inst, const DotRegistry& reg, RpMode mode = RpMode::Dotted,
                       const PairFormat& fmt = {});

struct BuildOptions {
  WsdMode wsd_mode = WsdMode::PosGuided;
  RpMode rp_mode = RpMode::Dotted;
  std::uint64_t seed = 0;
  PairFormat format;
  PosMap pos_map;
  unsigned workers = 1;
};

struct FlattenResult {
  std::vector<PairSet> sets;  // aligned with the input instances
  std::size_t examples = 0;   // instances that produced pairs
  std::size_t sequences = 0;
  std::size_t discarded = 0;
  std::size_t fallbacks = 0;
};

/// Builds every instance's pair set, in input order regardless of `workers`.
/// `inv` / `reg` may be null when no instance of that task is present;
/// otherwise a LookupError is raised.
FlattenResult flatten(std::span<const TestInstance> instances, const SenseInventory* inv, const DotRegistry* reg,
                      const BuildOptions& opts);

/// Pair file: one JSONL record {"instance_id", "context", "gloss", "candidate_id", "label"} per pair.
void write_pairs(std::ostream& out, const FlattenResult& result);
std::vector<ContextGlossPair> load_pairs(std::istream& in);

}  // namespace lexidot
