#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
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
#include "lexidot/wikidata.hpp"

namespace lexidot {

enum class EntityType { GPE, ORG, LOC, PRODUCT, WORK_OF_ART, Other };

inline constexpr std::array kRelevantEntityTypes = {EntityType::GPE, EntityType::ORG, EntityType::LOC,
                                                    EntityType::PRODUCT, EntityType::WORK_OF_ART};

std::string_view to_string(EntityType t) noexcept;
/// "WORK-OF-ART" is accepted as a spelling of WORK_OF_ART; anything
/// unrecognised is Other.
EntityType parse_entity_type(std::string_view s) noexcept;

/// A named-entity mention in a corpus sentence; offsets in code points.
struct EntityMention {
  std::string surface;
  EntityType type = EntityType::Other;
  std::string type_raw;
  std::size_t sentence_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
};

struct CorpusSentence {
  std::string sentence;
  std::vector<EntityMention> mentions;
};

/// JSONL: {"sentence", "mentions": [{"surface", "type", "start", "end"}]}.
/// Spans are validated against the sentence.
std::vector<CorpusSentence> load_corpus(std::istream& in);
std::vector<CorpusSentence> load_corpus(const std::filesystem::path& path);

std::vector<EntityMention> all_mentions(std::span<const CorpusSentence> corpus);

/// Keeps GPE, ORG, LOC, PRODUCT and WORK_OF_ART mentions.
std::vector<EntityMention> filter_entity_types(std::span<const EntityMention> mentions);

/// Surface frequencies, one table per entity type.
std::map<EntityType, std::map<std::string, std::size_t>> type_frequencies(std::span<const EntityMention> mentions);

/// Keeps the most frequent (1 - percentile) share of word types: with N
/// types sorted by ascending frequency, the threshold is the frequency at
/// 0-based rank floor(percentile * N) and every type at or above it
/// survives, ties included. Output is sorted by descending frequency, then
/// by word. Throws ArgumentError for empty counts or a percentile outside
/// (0, 1).
std::vector<std::string> frequency_percentile_filter(const std::map<std::string, std::size_t>& counts,
                                                     double percentile);

struct ResolvedWord {
  std::string word;    // the resolved surface: the source word, or an entry label after a split
  std::string source;  // the corpus surface it came from
  WikidataEntry entry;
};

/// No entry drops the word; one entry keeps it; several entries split it
/// into one word per entry, named by the entry label (suffixed with the qid
/// when labels collide). TransportError propagates.
std::vector<ResolvedWord> resolve_wikidata(std::string_view word, WikidataClient& client);

struct Resolution {
  std::vector<ResolvedWord> words;
  std::vector<std::string> dropped;
  std::size_t input = 0;
  std::size_t extra_splits = 0;
};

Resolution resolve_all(std::span<const std::string> words, WikidataClient& client);

/// Wikidata category -> dot object.
class CategoryMap {
 public:
  /// The built-in category associations.
  static CategoryMap builtin();
  /// JSONL {"category", "dot_object"}.
  static CategoryMap load(std::istream& in);
  static CategoryMap load(const std::filesystem::path& path);

  void add(std::string category, const DotObject& dot);
  const DotObject* find(std::string_view category) const noexcept;
  const std::map<std::string, const DotObject*, std::less<>>& entries() const noexcept { return map_; }
  void save(std::ostream& out) const;

 private:
  std::map<std::string, const DotObject*, std::less<>> map_;
};

struct DotAssignment {
  const DotObject* dot_object = nullptr;
  std::string category;
};

/// First category of the entry's closure (breadth-first order) present in
/// the map; nullopt is the unmapped signal.
std::optional<DotAssignment> map_category_to_dot(const WikidataEntry& entry, const CategoryMap& map);

/// Up to `n` RP instances for `word`, one per mention occurrence, drawn
/// without replacement by a generator keyed on (seed, word) and returned in
/// corpus order. Instance ids are "<word>#<k>".
std::vector<TestInstance> sample_sentences(std::span<const CorpusSentence> corpus, std::string_view word,
                                           std::size_t n, std::uint64_t seed);

struct Split {
  std::vector<TestInstance> train;
  std::vector<TestInstance> test;
};

/// Seeded, lemma-stratified split. The test side gets round(fraction * N)
/// instances; each lemma contributes in proportion to its size. Both sides
/// keep input order. Throws ArgumentError unless 0 < fraction < 1.
Split split_dataset(std::span<const TestInstance> instances, double test_fraction, std::uint64_t seed);

/// Applies {"instance_id", "gold"} labels, validating each against the
/// instance's full candidate set (every sense of the lemma, or the dot
/// object's classes). Throws ValidationError on unknown ids or labels.
std::vector<TestInstance> import_labels(std::vector<TestInstance> instances,
                                        const std::map<std::string, std::string>& labels, const SenseInventory* inv,
                                        const DotRegistry* reg);
std::map<std::string, std::string> load_labels(std::istream& in);

struct DatasetConfig {
  double percentile = 0.99;
  std::size_t sample_size = 30;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
};

struct DatasetResult {
  std::vector<TestInstance> train;
  std::vector<TestInstance> test;
  DotRegistry registry;
  Json manifest;  // stage counts, config and seed
};

/// Corpus -> entity filter -> per-type percentile selection -> Wikidata
/// drop/split -> category mapping -> sentence sampling -> split.
DatasetResult build_dataset(std::span<const CorpusSentence> corpus, WikidataClient& client, const CategoryMap& map,
                            const DatasetConfig& config);

}  // namespace lexidot
