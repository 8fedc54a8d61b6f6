#pragma once

// Hand-built and generated fixtures shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexidot/dot.hpp"
#include "lexidot/inventory.hpp"
#include "lexidot/pairs.hpp"

namespace fixtures {

using namespace lexidot;

inline constexpr const char* kZhuangGold = "zhuang.4";

/// 狀 with the four senses shown in the pair-format table (the second one has
/// no example sentence), a single-sense lemma and a mixed-POS lemma.
inline SenseInventory zhuang_inventory() {
  SenseInventory inv;
  inv.add({"zhuang.1", "狀", "Na", PosCategory::CommonNoun, "以說話者的觀點，描述人或事物呈現的樣子。",
           {"我故作痛苦地把眉頭一皺，作欲嘔狀。"}});
  inv.add({"zhuang.2", "狀", "Na", PosCategory::CommonNoun, "構成特定對象的外部輪廓。", {}});
  inv.add({"zhuang.3", "狀", "Na", PosCategory::CommonNoun, "請求司法機關審理的案件。",
           {"向法院提出刑事陳明狀。", "他遞了一紙訴狀。"}});
  inv.add({kZhuangGold, "狀", "Na", PosCategory::CommonNoun, "刻意向較有權力的人告發他人的過失。",
           {"到產品公司的網站去告她一狀。"}});
  inv.add({"yaoshi.1", "鑰匙", "Na", PosCategory::CommonNoun, "用來開鎖的器具。", {"他忘了帶鑰匙。"}});
  inv.add({"baodao.1", "報導", "VC", PosCategory::Verb, "將消息告知大眾。", {"記者報導了這件事。"}});
  inv.add({"baodao.2", "報導", "Na", PosCategory::CommonNoun, "告知大眾的消息內容。", {"這篇報導很長。"}});
  inv.add({"baodao.3", "報導", "VC", PosCategory::Verb, "引導方向。", {"請為我們報導前路。"}});
  inv.add({"baodao.4", "報導", "Na", PosCategory::CommonNoun, "新聞節目中的段落。", {"下一則報導。"}});
  return inv;
}

inline TestInstance zhuang_instance() {
  return {"zhuang-table", "雇主一狀告到上頭", 3, 4, "狀", "Na", std::string(kZhuangGold), Task::Wsd};
}

/// 哈佛 (Org.Loc.Hum) and 星巴克 (Prcr.Prct.Loc).
inline DotRegistry proper_noun_registry() {
  DotRegistry reg;
  reg.add("哈佛", parse_dot_object("Org.Loc.Hum"), "university");
  reg.add("星巴克", parse_dot_object("Prcr.Prct.Loc"), "business");
  return reg;
}

inline TestInstance harvard_instance() {
  return {"harvard-table", "他最近為了哈佛學費煩惱", 5, 7, "哈佛", "Nb", std::string("Organization"), Task::Rp};
}

/// A three-byte CJK stem followed by ASCII digits.
inline std::string numbered(const char* stem, std::size_t i) { return stem + std::to_string(i); }
inline std::size_t code_points(const std::string& numbered_word) { return 1 + (numbered_word.size() - 3); }

struct WsdFixture {
  SenseInventory inventory;
  std::vector<TestInstance> instances;
};

/// Random lemmas with 2..max_senses senses of mixed POS; every gold sense
/// shares the instance's POS category, so it survives POS-guided filtering.
inline WsdFixture random_wsd(std::size_t n_instances, std::uint64_t seed, std::size_t n_lemmas = 60,
                             std::size_t max_senses = 14) {
  static const std::vector<std::string> tags = {"Na", "VC", "Nb", "VH", "D", "Nc"};
  std::mt19937_64 rng(seed);
  WsdFixture f;
  std::vector<std::vector<const Sense*>> by_lemma;
  for (std::size_t l = 0; l < n_lemmas; ++l) {
    const auto lemma = numbered("詞", l);
    const auto k = std::uniform_int_distribution<std::size_t>(2, max_senses)(rng);
    for (std::size_t s = 0; s < k; ++s) {
      const auto& tag = tags[rng() % tags.size()];
      std::vector<std::string> examples;
      for (std::size_t e = rng() % 3; e > 0; --e) examples.push_back("例句" + std::to_string(e) + lemma);
      f.inventory.add({lemma + "." + std::to_string(s), lemma, tag, simplify_pos(tag), "釋義" + std::to_string(s),
                       examples});
    }
  }
  for (std::size_t i = 0; i < n_instances; ++i) {
    const auto lemma = numbered("詞", rng() % n_lemmas);
    const auto senses = f.inventory.senses_of(lemma);
    const Sense* gold = senses[rng() % senses.size()];
    f.instances.push_back({std::to_string(i), "我們看到" + lemma + "了。", 4, 4 + code_points(lemma), lemma,
                           gold->pos_raw, gold->sense_id, Task::Wsd});
  }
  return f;
}

struct RpFixture {
  DotRegistry registry;
  std::vector<TestInstance> instances;
};

/// Random proper nouns spread over the seven dot objects, gold drawn from
/// each lemma's own classes.
inline RpFixture random_rp(std::size_t n_instances, std::uint64_t seed, std::size_t n_lemmas = 40) {
  std::mt19937_64 rng(seed);
  RpFixture f;
  std::vector<const DotObject*> dots;
  for (std::size_t l = 0; l < n_lemmas; ++l) {
    const auto& dot = canonical_dot_objects()[rng() % canonical_dot_objects().size()];
    f.registry.add(numbered("名", l), dot);
    dots.push_back(&dot);
  }
  for (std::size_t i = 0; i < n_instances; ++i) {
    const auto l = rng() % n_lemmas;
    const auto lemma = numbered("名", l);
    const auto& classes = dots[l]->classes;
    const auto gold = std::string(to_string(classes[rng() % classes.size()]));
    f.instances.push_back({std::to_string(i), "昨天" + lemma + "宣布消息", 2, 2 + code_points(lemma), lemma, "Nb",
                           gold, Task::Rp});
  }
  return f;
}

}  // namespace fixtures
