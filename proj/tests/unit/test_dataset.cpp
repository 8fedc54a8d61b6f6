#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "lexidot/dataset.hpp"
#include "lexidot/error.hpp"
#include "oracles.hpp"

using namespace lexidot;

namespace {

EntityMention mention(std::string surface, EntityType type) { return {std::move(surface), type, "", 0, 0, 0}; }

/// Corpus where `word` occurs `n` times, once per sentence.
std::vector<CorpusSentence> repeated(const std::string& word, std::size_t n, EntityType type = EntityType::ORG) {
  std::vector<CorpusSentence> corpus;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string prefix = "第" + std::to_string(i) + "次";
    CorpusSentence s{prefix + word + "開會", {}};
    const std::size_t start = 2 + std::to_string(i).size();
    s.mentions.push_back({word, type, std::string(to_string(type)), i, start, start + 2});
    corpus.push_back(std::move(s));
  }
  return corpus;
}

FixtureClient table_client() {
  FixtureClient c;
  c.add("國冥黨", {});
  c.add("花蓮", {{"Q1", "花蓮市", {"city"}}, {"Q2", "花蓮縣", {"county"}}});
  c.add("台大", {{"Q3", "國立臺灣大學", {"university"}}});
  return c;
}

}  // namespace

TEST_CASE("entity type parsing and filtering") {
  CHECK(parse_entity_type("WORK-OF-ART") == EntityType::WORK_OF_ART);
  CHECK(parse_entity_type("PERSON") == EntityType::Other);
  std::vector<EntityMention> v = {mention("a", EntityType::GPE), mention("b", EntityType::Other),
                                  mention("c", EntityType::GPE), mention("d", EntityType::Other),
                                  mention("e", EntityType::GPE)};
  CHECK(filter_entity_types(v).size() == 3);
  CHECK(filter_entity_types(std::vector<EntityMention>{}).empty());
}

TEST_CASE("percentile filter") {
  std::map<std::string, std::size_t> counts;
  for (std::size_t f = 1; f <= 100; ++f) counts["w" + std::to_string(f)] = f;
  CHECK(frequency_percentile_filter(counts, 0.99) == std::vector<std::string>{"w100"});
  counts["tie"] = 100;
  const auto kept = frequency_percentile_filter(counts, 0.99);
  CHECK(std::set<std::string>(kept.begin(), kept.end()) == std::set<std::string>{"w100", "tie"});

  std::map<std::string, std::size_t> equal = {{"a", 4}, {"b", 4}, {"c", 4}};
  CHECK(frequency_percentile_filter(equal, 0.99).size() == 3);
  CHECK(frequency_percentile_filter({{"solo", 1}}, 0.99) == std::vector<std::string>{"solo"});
  CHECK_THROWS_AS(frequency_percentile_filter({}, 0.99), ArgumentError);
  CHECK_THROWS_AS(frequency_percentile_filter(equal, 1.0), ArgumentError);
}

TEST_CASE("percentile filter matches a descending-rank recount") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    std::map<std::string, std::size_t> counts;
    for (auto n = 1 + rng() % 300; n > 0; --n) counts["w" + std::to_string(n)] = 1 + rng() % 50;
    for (double p : {0.5, 0.9, 0.99}) {
      const auto kept = frequency_percentile_filter(counts, p);
      CHECK(std::set<std::string>(kept.begin(), kept.end()) == oracle::top_share(counts, p));
      for (std::size_t i = 1; i < kept.size(); ++i) CHECK(counts[kept[i - 1]] >= counts[kept[i]]);
    }
  }
}

TEST_CASE("wikidata drop and split") {
  auto client = table_client();
  CHECK(resolve_wikidata("國冥黨", client).empty());
  const auto hualien = resolve_wikidata("花蓮", client);
  REQUIRE(hualien.size() == 2);
  CHECK(hualien[0].word == "花蓮市");
  CHECK(hualien[1].word == "花蓮縣");
  CHECK(hualien[0].source == "花蓮");
  const auto one = resolve_wikidata("台大", client);
  REQUIRE(one.size() == 1);
  CHECK(one[0].word == "台大");

  FixtureClient same;
  same.add("長安", {{"Q7", "長安", {"city"}}, {"Q8", "長安", {"business"}}});
  const auto dup = resolve_wikidata("長安", same);
  CHECK(dup[0].word == "長安(Q7)");
  CHECK(dup[1].word == "長安(Q8)");

  const std::vector<std::string> words = {"國冥黨", "花蓮", "台大", "不存在"};
  const auto r = resolve_all(words, client);
  CHECK(r.input == 4);
  CHECK(r.dropped.size() == 2);
  CHECK(r.extra_splits == 1);
  CHECK(r.words.size() == r.input - r.dropped.size() + r.extra_splits);
}

TEST_CASE("category map") {
  const auto map = CategoryMap::builtin();
  CHECK(map.find("business")->name == "Prcr.Prct.Loc");
  CHECK(map.find("mass media")->name == "Org.Info.Phy.Hum");
  CHECK(map.find("asteroid") == nullptr);
  CHECK_FALSE(map_category_to_dot({"Q", "x", {"asteroid"}}, map));
  const auto a = map_category_to_dot({"Q", "x", {"asteroid", "museum", "business"}}, map);
  REQUIRE(a);
  CHECK(a->category == "museum");
  CHECK(a->dot_object->name == "Loc.Org");

  std::ostringstream out;
  map.save(out);
  std::istringstream in(out.str());
  CHECK(CategoryMap::load(in).entries().size() == map.entries().size());
  std::istringstream bad(R"({"category":"x","dot_object":"Loc.Hum"})");
  CHECK_THROWS_AS(CategoryMap::load(bad), ValidationError);
}

TEST_CASE("sampling") {
  const auto many = repeated("台大", 100);
  const auto a = sample_sentences(many, "台大", 30, 4);
  CHECK(a.size() == 30);
  CHECK(a == sample_sentences(many, "台大", 30, 4));
  CHECK(a != sample_sentences(many, "台大", 30, 5));
  std::set<std::string> sentences;
  for (const auto& inst : a) {
    CHECK_NOTHROW(validate(inst));
    CHECK(inst.task == Task::Rp);
    CHECK(inst.pos_raw == "Nb");
    sentences.insert(inst.sentence);
  }
  CHECK(sentences.size() == 30);
  CHECK(a[0].id == "台大#0");
  CHECK(sample_sentences(repeated("台大", 12), "台大", 30, 4).size() == 12);
  CHECK(sample_sentences(many, "花蓮", 30, 4).empty());
}

TEST_CASE("stratified split") {
  std::vector<TestInstance> ten;
  for (int i = 0; i < 10; ++i) ten.push_back({std::to_string(i), "哈佛", 0, 2, "哈佛", "Nb", {}, Task::Rp});
  const auto s = split_dataset(ten, 0.2, 1);
  CHECK(s.train.size() == 8);
  CHECK(s.test.size() == 2);
  CHECK_THROWS_AS(split_dataset(ten, 0.0, 1), ArgumentError);
  CHECK_THROWS_AS(split_dataset(ten, 1.0, 1), ArgumentError);

  const auto f = fixtures::random_rp(400, 2, 10);
  const auto t = split_dataset(f.instances, 0.25, 3);
  CHECK(t.test.size() == 100);
  CHECK(t.train.size() == 300);
  std::map<std::string, int> total, test;
  for (const auto& i : f.instances) ++total[i.lemma];
  for (const auto& i : t.test) ++test[i.lemma];
  for (const auto& [lemma, n] : total) CHECK(std::abs(test[lemma] - 0.25 * n) <= 1.0);
  auto ordered = [](const std::vector<TestInstance>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::stoi(v[i - 1].id) >= std::stoi(v[i].id)) return false;
    return true;
  };
  CHECK(ordered(t.train));
  CHECK(ordered(t.test));
}

TEST_CASE("import labels") {
  const auto inv = fixtures::zhuang_inventory();
  const auto reg = fixtures::proper_noun_registry();
  std::vector<TestInstance> v = {fixtures::zhuang_instance(), fixtures::harvard_instance()};
  v[0].gold.reset();
  v[1].gold.reset();
  const auto out = import_labels(v, {{"zhuang-table", "zhuang.1"}, {"harvard-table", "Human"}}, &inv, &reg);
  CHECK(out[0].gold == "zhuang.1");
  CHECK(out[1].gold == "Human");
  CHECK_THROWS_AS(import_labels(v, {{"harvard-table", "Product"}}, &inv, &reg), ValidationError);
  CHECK_THROWS_AS(import_labels(v, {{"nobody", "Human"}}, &inv, &reg), ValidationError);
  std::istringstream dup(R"({"instance_id":"a","gold":"x"}
{"instance_id":"a","gold":"y"})");
  CHECK_THROWS_AS(load_labels(dup), ValidationError);
}

TEST_CASE("corpus loader validates spans") {
  std::istringstream ok(R"({"sentence":"我住在花蓮","mentions":[{"surface":"花蓮","type":"GPE","start":3,"end":5}]})");
  const auto c = load_corpus(ok);
  REQUIRE(c.size() == 1);
  CHECK(c[0].mentions[0].type == EntityType::GPE);
  std::istringstream off(R"({"sentence":"我住在花蓮","mentions":[{"surface":"花蓮","type":"GPE","start":2,"end":4}]})");
  CHECK_THROWS_AS(load_corpus(off), SpanError);
}

TEST_CASE("end-to-end dataset build") {
  std::vector<CorpusSentence> corpus;
  for (const auto& s : repeated("台大", 40)) corpus.push_back(s);
  for (const auto& s : repeated("花蓮", 3, EntityType::GPE)) corpus.push_back(s);
  auto client = table_client();
  DatasetConfig cfg;
  cfg.percentile = 0.5;
  const auto r = build_dataset(corpus, client, CategoryMap::builtin(), cfg);
  const auto& st = r.manifest["stages"];
  CHECK(st["extracted"]["mentions_filtered"] == 43);
  CHECK(st["filtered"]["words"] == 2);
  CHECK(st["resolved"]["extra_splits"] == 1);
  CHECK(st["mapped"]["registered"] == 1);
  CHECK(st["mapped"]["unmapped"] == 2);
  CHECK(st["sampled"]["instances"] == 30);
  CHECK(r.train.size() == 24);
  CHECK(r.test.size() == 6);
  CHECK(r.registry.entry("台大").dot_object->name == "Org.Loc.Hum");

  const auto empty = build_dataset({}, client, CategoryMap::builtin(), cfg);
  CHECK(empty.train.empty());
  CHECK(empty.test.empty());
}

TEST_CASE("shipped category map equals the built-in table") {
  const auto shipped = CategoryMap::load(std::filesystem::path(LEXIDOT_DATA_DIR) / "category_map.jsonl");
  CHECK(shipped.entries() == CategoryMap::builtin().entries());
}
