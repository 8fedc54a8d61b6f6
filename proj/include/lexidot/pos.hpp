#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace lexidot {

enum class PosCategory { ProperNoun, CommonNoun, Verb, Others };

inline constexpr std::array kPosCategories = {PosCategory::ProperNoun, PosCategory::CommonNoun,
                                              PosCategory::Verb, PosCategory::Others};

std::string_view to_string(PosCategory c) noexcept;
std::optional<PosCategory> parse_pos_category(std::string_view s) noexcept;

/// The CKIP part-of-speech tags shipped in the default mapping table.
const std::array<std::string_view, 44>& ckip_tags() noexcept;

/// Prefix rule: "Nb" is a proper noun, other N* tags are common nouns, V*
/// tags are verbs, everything else is Others.
PosCategory simplify_pos(std::string_view ckip_tag) noexcept;

/// Tag table with the prefix rule as fallback for tags it does not list.
/// Loaded from a TSV file of `tag<TAB>category` lines (# comments allowed).
class PosMap {
 public:
  PosMap() = default;

  static PosMap load(std::istream& in);
  static PosMap load(const std::filesystem::path& path);

  void set(std::string tag, PosCategory category);
  PosCategory operator()(std::string_view ckip_tag) const noexcept;
  std::size_t overrides() const noexcept { return table_.size(); }

 private:
  std::unordered_map<std::string, PosCategory> table_;
};

}  // namespace lexidot
