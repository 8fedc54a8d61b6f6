#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lexidot {

/// Atomic facet a regularly polysemous proper noun can realize.
enum class TypeClass { Information, Physical, Location, Human, Organization, Event, Producer, Product };

inline constexpr std::array kTypeClasses = {TypeClass::Information, TypeClass::Physical,  TypeClass::Location,
                                            TypeClass::Human,       TypeClass::Organization, TypeClass::Event,
                                            TypeClass::Producer,    TypeClass::Product};

std::string_view to_string(TypeClass c) noexcept;
/// Abbreviation used in dot-object names ("Org", "Prct", ...).
std::string_view abbreviation(TypeClass c) noexcept;
std::optional<TypeClass> parse_type_class(std::string_view name) noexcept;
std::optional<TypeClass> parse_type_class_abbreviation(std::string_view abbrev) noexcept;

/// Dictionary gloss of a type class: its Chinese label, Chinese gloss and an
/// English rendering.
struct TypeClassGloss {
  std::string label_zh;
  std::string gloss_zh;
  std::string gloss_en;

  friend bool operator==(const TypeClassGloss&, const TypeClassGloss&) = default;
};

/// Built-in glosses for the eight type classes.
const TypeClassGloss& builtin_gloss(TypeClass c) noexcept;

/// A named combination of two to four distinct type classes, e.g.
/// Prcr.Prct.Loc = producer / product / location.
struct DotObject {
  std::string name;
  std::vector<TypeClass> classes;

  friend bool operator==(const DotObject&, const DotObject&) = default;
};

/// The seven dot objects recognised by the toolkit, in their canonical order.
const std::array<DotObject, 7>& canonical_dot_objects() noexcept;

/// Resolves a dot-object name ("Org.Loc.Hum"; '*' is accepted as separator)
/// to its canonical object. Throws ValidationError for anything else.
const DotObject& parse_dot_object(std::string_view name);

struct RegistryEntry {
  const DotObject* dot_object = nullptr;
  std::string wikidata_category;
};

/// Proper-noun lemma to dot object, plus the type-class glosses used when
/// composing pairs. Immutable after load.
class DotRegistry {
 public:
  DotRegistry();

  /// JSONL lines of two shapes:
  ///   {"lemma", "dot_object", "wikidata_category"}
  ///   {"type_class", "label_zh"?, "gloss_zh"?, "gloss_en"?}   (gloss override)
  static DotRegistry load(std::istream& in);
  static DotRegistry load(const std::filesystem::path& path);

  void add(std::string lemma, const DotObject& dot, std::string wikidata_category = {});
  void set_gloss(TypeClass c, TypeClassGloss gloss);
  void save(std::ostream& out) const;

  bool contains(std::string_view lemma) const noexcept;
  /// Throws LookupError for an unregistered lemma.
  const RegistryEntry& entry(std::string_view lemma) const;
  const TypeClassGloss& gloss(TypeClass c) const noexcept;
  const std::map<std::string, RegistryEntry, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, RegistryEntry, std::less<>> entries_;
  std::array<TypeClassGloss, kTypeClasses.size()> glosses_;
};

/// Type classes of the lemma's dot object, in registry order.
std::vector<TypeClass> dot_candidates(std::string_view lemma, const DotRegistry& reg);

}  // namespace lexidot
