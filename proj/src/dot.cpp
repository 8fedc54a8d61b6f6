#include "lexidot/dot.hpp"

#include <algorithm>

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

namespace {

struct ClassInfo {
  std::string_view name;
  std::string_view abbrev;
};

constexpr std::array<ClassInfo, 8> kClassInfo = {{
    {"Information", "Info"},
    {"Physical", "Phy"},
    {"Location", "Loc"},
    {"Human", "Hum"},
    {"Organization", "Org"},
    {"Event", "Evt"},
    {"Producer", "Prcr"},
    {"Product", "Prct"},
}};

std::size_t index_of(TypeClass c) noexcept { return static_cast<std::size_t>(c); }

DotObject make_dot(std::initializer_list<TypeClass> classes) {
  DotObject d;
  d.classes.assign(classes);
  for (auto c : d.classes) {
    if (!d.name.empty()) d.name += '.';
    d.name += abbreviation(c);
  }
  return d;
}

}  // namespace

std::string_view to_string(TypeClass c) noexcept { return kClassInfo[index_of(c)].name; }
std::string_view abbreviation(TypeClass c) noexcept { return kClassInfo[index_of(c)].abbrev; }

std::optional<TypeClass> parse_type_class(std::string_view name) noexcept {
  for (auto c : kTypeClasses)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::optional<TypeClass> parse_type_class_abbreviation(std::string_view abbrev) noexcept {
  for (auto c : kTypeClasses)
    if (abbreviation(c) == abbrev) return c;
  return std::nullopt;
}

const TypeClassGloss& builtin_gloss(TypeClass c) noexcept {
  static const std::array<TypeClassGloss, 8> kGlosses = {{
      {"資訊", "泛指一般資料和訊息。", "general reference to data, knowledge, and messages."},
      {"有形的", "有具體形狀。", "tangible objects."},
      {"地點", "所在的地方。", "positions or occupied sites."},
      {"人類", "人的總稱。", "general term of humanity."},
      {"機構", "泛指機關團體或工作單位。", "general reference to administrative and functional structures."},
      {"事件", "事情、事項。", "circumstances, incidents."},
      {"作者;製造商", "創作詩歌、文章或其他藝術品的人;製造或出售各種物品的商家。",
       "creators of poetry, articles, or other artworks; business who produces or supplies goods or services."},
      {"作品;產品", "文學藝術方面創作的成品;生產的物品。", "artistic creations; commodities that have been produced."},
  }};
  return kGlosses[index_of(c)];
}

const std::array<DotObject, 7>& canonical_dot_objects() noexcept {
  using enum TypeClass;
  static const std::array<DotObject, 7> kDots = {
      make_dot({Information, Physical}),
      make_dot({Location, Organization}),
      make_dot({Organization, Human}),
      make_dot({Organization, Information, Physical, Human}),
      make_dot({Organization, Location, Human}),
      make_dot({Physical, Event, Human}),
      make_dot({Producer, Product, Location}),
  };
  return kDots;
}

const DotObject& parse_dot_object(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '*', '.');
  for (const auto& d : canonical_dot_objects())
    if (d.name == normalized) return d;
  throw ValidationError("not one of the seven dot objects: " + std::string(name));
}

DotRegistry::DotRegistry() {
  for (auto c : kTypeClasses) glosses_[index_of(c)] = builtin_gloss(c);
}

DotRegistry DotRegistry::load(std::istream& in) {
  DotRegistry reg;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    if (rec.contains("type_class")) {
      const auto name = require_string(rec, "type_class", line);
      auto c = parse_type_class(name);
      if (!c) throw ValidationError("line " + std::to_string(line) + ": unknown type class " + name);
      TypeClassGloss g = reg.gloss(*c);
      if (rec.contains("label_zh")) g.label_zh = require_string(rec, "label_zh", line);
      if (rec.contains("gloss_zh")) g.gloss_zh = require_string(rec, "gloss_zh", line);
      if (rec.contains("gloss_en")) g.gloss_en = require_string(rec, "gloss_en", line);
      reg.set_gloss(*c, std::move(g));
      return;
    }
    auto lemma = require_string(rec, "lemma", line);
    const auto dot_name = require_string(rec, "dot_object", line);
    std::string category;
    if (auto it = rec.find("wikidata_category"); it != rec.end() && it->is_string()) category = it->get<std::string>();
    try {
      reg.add(std::move(lemma), parse_dot_object(dot_name), std::move(category));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  });
  return reg;
}

DotRegistry DotRegistry::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load(in);
}

void DotRegistry::add(std::string lemma, const DotObject& dot, std::string wikidata_category) {
  if (lemma.empty()) throw ValidationError("empty registry lemma");
  const DotObject& canonical = parse_dot_object(dot.name);
  if (canonical.classes != dot.classes) throw ValidationError("dot object " + dot.name + " has non-canonical classes");
  if (entries_.contains(lemma)) throw ValidationError("duplicate registry lemma " + lemma);
  entries_.emplace(std::move(lemma), RegistryEntry{&canonical, std::move(wikidata_category)});
}

void DotRegistry::set_gloss(TypeClass c, TypeClassGloss gloss) {
  if (gloss.gloss_zh.empty()) throw ValidationError("empty gloss for " + std::string(to_string(c)));
  glosses_[index_of(c)] = std::move(gloss);
}

void DotRegistry::save(std::ostream& out) const {
  for (auto c : kTypeClasses) {
    if (gloss(c) == builtin_gloss(c)) continue;
    const auto& g = gloss(c);
    out << Json{{"type_class", to_string(c)}, {"label_zh", g.label_zh}, {"gloss_zh", g.gloss_zh},
                {"gloss_en", g.gloss_en}}.dump()
        << '\n';
  }
  for (const auto& [lemma, e] : entries_)
    out << Json{{"lemma", lemma}, {"dot_object", e.dot_object->name}, {"wikidata_category", e.wikidata_category}}.dump()
        << '\n';
}

bool DotRegistry::contains(std::string_view lemma) const noexcept { return entries_.find(lemma) != entries_.end(); }

const RegistryEntry& DotRegistry::entry(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) throw LookupError("lemma not in dot registry: " + std::string(lemma));
  return it->second;
}

const TypeClassGloss& DotRegistry::gloss(TypeClass c) const noexcept { return glosses_[index_of(c)]; }

std::vector<TypeClass> dot_candidates(std::string_view lemma, const DotRegistry& reg) {
  return reg.entry(lemma).dot_object->classes;
}

}  // namespace lexidot
