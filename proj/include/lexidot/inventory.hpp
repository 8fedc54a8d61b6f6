#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexidot/pos.hpp"

namespace lexidot {

/// One enumerated sense of a common word.
struct Sense {
  std::string sense_id;
  std::string lemma;
  std::string pos_raw;
  PosCategory pos = PosCategory::Others;
  std::string gloss;
  std::vector<std::string> examples;

  friend bool operator==(const Sense&, const Sense&) = default;
};

/// Lemma-indexed sense inventory. Senses of a lemma keep their file order,
/// which is the tie-breaking order everywhere downstream. Immutable once
/// loaded, so concurrent readers need no locking.
class SenseInventory {
 public:
  /// Reads the JSONL inventory format:
  ///   {"sense_id", "lemma", "pos_raw", "gloss", "examples": [str]}
  static SenseInventory load(std::istream& in, const PosMap& pos_map = {});
  static SenseInventory load(const std::filesystem::path& path, const PosMap& pos_map = {});

  /// Validates and appends. Throws ValidationError on an empty id, lemma or
  /// gloss, on a duplicate sense_id, or when `pos` disagrees with `pos_raw`
  /// under `pos_map`.
  void add(Sense sense, const PosMap& pos_map = {});

  void save(std::ostream& out) const;

  bool contains(std::string_view lemma) const noexcept;
  /// Throws LookupError for an unknown lemma.
  std::size_t sense_count(std::string_view lemma) const;
  std::vector<const Sense*> senses_of(std::string_view lemma) const;
  const Sense* find(std::string_view sense_id) const noexcept;

  const std::vector<Sense>& senses() const noexcept { return senses_; }
  std::size_t lemma_count() const noexcept { return by_lemma_.size(); }
  std::size_t size() const noexcept { return senses_.size(); }

  friend bool operator==(const SenseInventory& a, const SenseInventory& b) { return a.senses_ == b.senses_; }

 private:
  const std::vector<std::size_t>& indices(std::string_view lemma) const;

  std::vector<Sense> senses_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Candidate senses for `lemma`, optionally restricted to one simplified POS
/// category. Always an order-preserving sub-list of the unfiltered result;
/// may be empty. Throws LookupError for an unknown lemma.
std::vector<const Sense*> candidates_for(std::string_view lemma, std::optional<PosCategory> filter,
                                         const SenseInventory& inv);

}  // namespace lexidot
