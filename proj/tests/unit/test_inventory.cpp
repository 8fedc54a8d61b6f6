#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "lexidot/dot.hpp"
#include "lexidot/error.hpp"
#include "lexidot/inventory.hpp"

using namespace lexidot;

namespace {

const char* kTwoLemmas =
    R"({"sense_id":"a.1","lemma":"打","pos_raw":"VC","gloss":"擊","examples":["打球"]}
{"sense_id":"a.2","lemma":"打","pos_raw":"VC","gloss":"做","examples":[]}
{"sense_id":"a.3","lemma":"打","pos_raw":"Nf","gloss":"十二個","examples":["一打蛋"]}
{"sense_id":"b.1","lemma":"花","pos_raw":"Na","gloss":"植物的花朵","examples":["一朵花"]}
{"sense_id":"b.2","lemma":"花","pos_raw":"VJ","gloss":"耗費","examples":["花錢"]}
)";

}  // namespace

TEST_CASE("load counts lemmas and senses") {
  std::istringstream in(kTwoLemmas);
  const auto inv = SenseInventory::load(in);
  CHECK(inv.lemma_count() == 2);
  CHECK(inv.size() == 5);
  CHECK(inv.sense_count("打") == 3);
  CHECK(inv.find("a.3")->pos == PosCategory::CommonNoun);
  CHECK(inv.find("b.2")->pos == PosCategory::Verb);
  CHECK(inv.find("zz") == nullptr);
  CHECK_THROWS_AS(inv.sense_count("xyz"), LookupError);
}

TEST_CASE("malformed records") {
  SUBCASE("missing gloss") {
    std::istringstream in(R"({"sense_id":"a","lemma":"x","pos_raw":"Na","examples":[]})");
    CHECK_THROWS_AS(SenseInventory::load(in), Error);
  }
  SUBCASE("empty gloss") {
    std::istringstream in(R"({"sense_id":"a","lemma":"x","pos_raw":"Na","gloss":"","examples":[]})");
    CHECK_THROWS_AS(SenseInventory::load(in), ValidationError);
  }
  SUBCASE("duplicate id") {
    std::istringstream in(R"({"sense_id":"a","lemma":"x","pos_raw":"Na","gloss":"g","examples":[]}
{"sense_id":"a","lemma":"y","pos_raw":"Na","gloss":"h","examples":[]})");
    CHECK_THROWS_AS(SenseInventory::load(in), ValidationError);
  }
  SUBCASE("bad json carries the line") {
    std::istringstream in(R"({"sense_id":"a","lemma":"x","pos_raw":"Na","gloss":"g","examples":[]}
{"sense_id":)");
    try {
      SenseInventory::load(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("add validates pos consistency") {
  SenseInventory inv;
  CHECK_THROWS_AS(inv.add({"s", "x", "VC", PosCategory::CommonNoun, "g", {}}), ValidationError);
  CHECK_NOTHROW(inv.add({"s", "x", "VC", PosCategory::Verb, "g", {}}));
}

TEST_CASE("save and load round-trip") {
  std::istringstream in(kTwoLemmas);
  const auto inv = SenseInventory::load(in);
  std::ostringstream out;
  inv.save(out);
  std::istringstream again(out.str());
  CHECK(SenseInventory::load(again) == inv);

  const auto z = fixtures::zhuang_inventory();
  std::ostringstream zout;
  z.save(zout);
  std::istringstream zin(zout.str());
  CHECK(SenseInventory::load(zin) == z);
}

TEST_CASE("candidates_for filters in inventory order") {
  const auto inv = fixtures::zhuang_inventory();
  CHECK(candidates_for("狀", std::nullopt, inv).size() == 4);
  const auto verbs = candidates_for("報導", PosCategory::Verb, inv);
  REQUIRE(verbs.size() == 2);
  CHECK(verbs[0]->sense_id == "baodao.1");
  CHECK(verbs[1]->sense_id == "baodao.3");
  CHECK(candidates_for("報導", PosCategory::ProperNoun, inv).empty());
  CHECK_THROWS_AS(candidates_for("xyz", std::nullopt, inv), LookupError);
}

TEST_CASE("filtered candidates are an ordered sub-list") {
  const auto f = fixtures::random_wsd(0, 11, 50);
  for (const auto& s : f.inventory.senses()) {
    const auto all = candidates_for(s.lemma, std::nullopt, f.inventory);
    for (auto cat : kPosCategories) {
      const auto sub = candidates_for(s.lemma, cat, f.inventory);
      std::size_t j = 0;
      for (const auto* c : all)
        if (j < sub.size() && sub[j] == c) ++j;
      CHECK(j == sub.size());
      for (const auto* c : sub) CHECK(c->pos == cat);
    }
  }
}

TEST_CASE("dot objects and type classes") {
  CHECK(canonical_dot_objects().size() == 7);
  for (const auto& d : canonical_dot_objects()) {
    CHECK(d.classes.size() >= 2);
    CHECK(d.classes.size() <= 4);
    CHECK(&parse_dot_object(d.name) == &d);
  }
  CHECK(parse_dot_object("Org*Loc*Hum").name == "Org.Loc.Hum");
  CHECK_THROWS_AS(parse_dot_object("Loc.Hum"), ValidationError);
  for (auto c : kTypeClasses) {
    CHECK(parse_type_class(to_string(c)) == c);
    CHECK(parse_type_class_abbreviation(abbreviation(c)) == c);
    CHECK_FALSE(builtin_gloss(c).label_zh.empty());
  }
  CHECK(builtin_gloss(TypeClass::Organization).label_zh == "機構");
  CHECK(builtin_gloss(TypeClass::Organization).gloss_zh.find("泛指機關團體") != std::string::npos);
  CHECK(builtin_gloss(TypeClass::Location).label_zh == "地點");
  CHECK(builtin_gloss(TypeClass::Human).label_zh == "人類");
}

TEST_CASE("dot_candidates") {
  const auto reg = fixtures::proper_noun_registry();
  CHECK(dot_candidates("星巴克", reg) ==
        std::vector<TypeClass>{TypeClass::Producer, TypeClass::Product, TypeClass::Location});
  CHECK(dot_candidates("哈佛", reg).size() == 3);
  CHECK_THROWS_AS(dot_candidates("xyz", reg), LookupError);
}

TEST_CASE("registry load, gloss override and round-trip") {
  std::istringstream in(R"({"lemma":"哈佛","dot_object":"Org.Loc.Hum","wikidata_category":"university"}
{"type_class":"Human","gloss_zh":"人。"}
)");
  const auto reg = DotRegistry::load(in);
  CHECK(reg.entry("哈佛").dot_object->name == "Org.Loc.Hum");
  CHECK(reg.entry("哈佛").wikidata_category == "university");
  CHECK(reg.gloss(TypeClass::Human).gloss_zh == "人。");
  CHECK(reg.gloss(TypeClass::Human).label_zh == "人類");
  std::ostringstream out;
  reg.save(out);
  std::istringstream again(out.str());
  const auto copy = DotRegistry::load(again);
  CHECK(copy.entries().size() == 1);
  CHECK(copy.gloss(TypeClass::Human) == reg.gloss(TypeClass::Human));

  std::istringstream bad(R"({"lemma":"x","dot_object":"Nope"})");
  CHECK_THROWS_AS(DotRegistry::load(bad), ValidationError);
}
