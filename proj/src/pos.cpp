#include "lexidot/pos.hpp"

#include <fstream>

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

std::string_view to_string(PosCategory c) noexcept {
  switch (c) {
    case PosCategory::ProperNoun: return "ProperNoun";
    case PosCategory::CommonNoun: return "CommonNoun";
    case PosCategory::Verb: return "Verb";
    case PosCategory::Others: return "Others";
  }
  return "Others";
}

std::optional<PosCategory> parse_pos_category(std::string_view s) noexcept {
  for (auto c : kPosCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

const std::array<std::string_view, 44>& ckip_tags() noexcept {
  static constexpr std::array<std::string_view, 44> kTags = {
      "A",   "Caa", "Cab", "Cba", "Cbb", "D",   "Da",  "Dfa", "Dfb", "Di", "Dk",
      "I",   "Na",  "Nb",  "Nc",  "Ncd", "Nd",  "Nep", "Neqa", "Neqb", "Nes", "Neu",
      "Nf",  "Ng",  "Nh",  "Nv",  "P",   "SHI", "T",   "VA",  "VAC", "VB", "VC",
      "VCL", "VD",  "VE",  "VF",  "VG",  "VH",  "VHC", "VI",  "VJ",  "VK", "VL"};
  return kTags;
}

PosCategory simplify_pos(std::string_view tag) noexcept {
  if (tag == "Nb") return PosCategory::ProperNoun;
  if (tag.starts_with('N')) return PosCategory::CommonNoun;
  if (tag.starts_with('V')) return PosCategory::Verb;
  return PosCategory::Others;
}

PosMap PosMap::load(std::istream& in) {
  PosMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected tag<TAB>category", line_no);
    auto category = parse_pos_category(std::string_view(line).substr(tab + 1));
    if (!category) throw ParseError("unknown POS category \"" + line.substr(tab + 1) + "\"", line_no);
    map.set(line.substr(0, tab), *category);
  }
  return map;
}

PosMap PosMap::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load(in);
}

void PosMap::set(std::string tag, PosCategory category) { table_[std::move(tag)] = category; }

PosCategory PosMap::operator()(std::string_view tag) const noexcept {
  if (!table_.empty()) {
    if (auto it = table_.find(std::string(tag)); it != table_.end()) return it->second;
  }
  return simplify_pos(tag);
}

}  // namespace lexidot
