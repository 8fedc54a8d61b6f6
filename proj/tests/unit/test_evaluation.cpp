#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "lexidot/error.hpp"
#include "lexidot/evaluation.hpp"
#include "oracles.hpp"

using namespace lexidot;

namespace {

using Labels = std::vector<std::optional<std::string>>;

SenseInventory senses_per_lemma(const std::vector<std::pair<std::string, int>>& spec) {
  SenseInventory inv;
  for (const auto& [lemma, n] : spec)
    for (int i = 0; i < n; ++i)
      inv.add({lemma + "." + std::to_string(i), lemma, "Na", PosCategory::CommonNoun, "g", {}});
  return inv;
}

}  // namespace

TEST_CASE("accuracy") {
  Labels gold(10, "a"), pred(10, "a");
  pred[0] = "b";
  pred[1] = std::nullopt;
  CHECK(accuracy(pred, gold) == doctest::Approx(0.8));
  CHECK(accuracy(gold, gold) == 1.0);
  Labels no_gold(2, std::nullopt);
  CHECK(accuracy(no_gold, no_gold) == 0.0);
  CHECK_THROWS_AS(accuracy(Labels(3, "a"), Labels(2, "a")), ArgumentError);
  CHECK_THROWS_AS(accuracy(Labels{}, Labels{}), ArgumentError);
}

TEST_CASE("complexity buckets") {
  const auto inv = senses_per_lemma({{"十", 10}, {"十一", 11}, {"打", 125}});
  CHECK(complexity_of("十", inv) == Complexity::Simple);
  CHECK(complexity_of("十一", inv) == Complexity::Complex);
  CHECK(complexity_of("打", inv) == Complexity::Complex);
  CHECK_THROWS_AS(complexity_of("無", inv), LookupError);
  std::vector<TestInstance> v = {{"0", "十", 0, 1, "十", "Na", {}, Task::Wsd},
                                 {"1", "十一", 0, 2, "十一", "Na", {}, Task::Wsd}};
  CHECK(bucket_by_complexity(v, inv) == std::vector<Complexity>{Complexity::Simple, Complexity::Complex});
}

TEST_CASE("pos buckets") {
  CHECK(pos_bucket("Na") == PosBucket::Noun);
  CHECK(pos_bucket("Nb") == PosBucket::Other);
  CHECK(pos_bucket("VC") == PosBucket::Verb);
  CHECK(pos_bucket("D") == PosBucket::Other);
}

TEST_CASE("random baseline") {
  std::vector<RandomCase> four(500, {4, true});
  const auto r = baseline_random(four, 1, 10000);
  CHECK(r.analytic == 0.25);
  CHECK(std::abs(r.monte_carlo - 0.25) < 0.02);
  CHECK(baseline_random(four, 1, 100).monte_carlo == baseline_random(four, 1, 100).monte_carlo);

  std::vector<RandomCase> mixed = {{2, true}, {4, true}, {3, false}};
  CHECK(baseline_random(mixed, 0, 0).analytic == doctest::Approx((0.5 + 0.25) / 3));

  for (const auto& d : canonical_dot_objects()) {
    std::vector<RandomCase> cases(10, {d.classes.size(), true});
    CHECK(baseline_random(cases, 0, 0).analytic == doctest::Approx(1.0 / d.classes.size()));
  }
  CHECK_THROWS_AS(baseline_random(std::vector<RandomCase>{{0, true}}, 0, 1), ArgumentError);
  CHECK_THROWS_AS(baseline_random(std::vector<RandomCase>{}, 0, 1), ArgumentError);
}

TEST_CASE("mfs baseline") {
  std::vector<LabeledItem> train = {{"w", "s1"}, {"w", "s1"}, {"w", "s1"}, {"w", "s2"}};
  std::vector<LabeledItem> test = {{"w", "s1"}, {"w", "s1"}, {"w", "s2"}};
  CHECK(baseline_mfs(train, test) == doctest::Approx(2.0 / 3.0));

  std::vector<LabeledItem> once = {{"w", "s1"}, {"w", "s2"}, {"v", "t1"}};
  CHECK(baseline_mfs(once, test) == 0.0);
  CHECK(baseline_mfs(std::vector<LabeledItem>{}, test) == 0.0);

  // ties follow inventory order, not label order
  const auto inv = senses_per_lemma({{"w", 3}});
  std::vector<LabeledItem> tie = {{"w", "w.2"}, {"w", "w.2"}, {"w", "w.1"}, {"w", "w.1"}};
  CHECK(train_mfs(tie, &inv).at("w") == "w.1");
  std::vector<LabeledItem> tie2 = {{"w", "w.2"}, {"w", "w.2"}, {"w", "w.0"}, {"w", "w.0"}};
  CHECK(train_mfs(tie2, &inv).at("w") == "w.0");
}

TEST_CASE("mfs matches the brute-force majority") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    std::map<std::string, std::vector<std::string>> order;
    SenseInventory inv;
    for (int l = 0; l < 5; ++l) {
      const auto lemma = "L" + std::to_string(l);
      for (int s = 0, k = 1 + static_cast<int>(rng() % 4); s < k; ++s) {
        const auto id = lemma + "." + std::to_string(s);
        inv.add({id, lemma, "Na", PosCategory::CommonNoun, "g", {}});
        order[lemma].push_back(id);
      }
    }
    auto draw = [&](std::size_t n) {
      std::vector<std::pair<std::string, std::string>> v;
      for (std::size_t i = 0; i < n; ++i) {
        const auto lemma = "L" + std::to_string(rng() % 5);
        v.emplace_back(lemma, order[lemma][rng() % order[lemma].size()]);
      }
      return v;
    };
    const auto train = draw(rng() % 40), test = draw(1 + rng() % 40);
    std::vector<LabeledItem> tr, te;
    for (auto& [k, v] : train) tr.push_back({k, v});
    for (auto& [k, v] : test) te.push_back({k, v});
    CHECK(baseline_mfs(tr, te, &inv) == doctest::Approx(oracle::mfs_accuracy(train, test, order)).epsilon(1e-12));
  }
}

TEST_CASE("mostfreq baseline") {
  std::vector<LabeledItem> train;
  for (int i = 0; i < 8; ++i) train.push_back({"Org.Hum", "Organization"});
  for (int i = 0; i < 2; ++i) train.push_back({"Org.Hum", "Human"});
  std::vector<LabeledItem> test;
  for (int i = 0; i < 7; ++i) test.push_back({"Org.Hum", "Organization"});
  for (int i = 0; i < 3; ++i) test.push_back({"Org.Hum", "Human"});
  const auto r = baseline_mostfreq_rp(train, test);
  CHECK(r.overall == doctest::Approx(0.7));
  CHECK(r.per_dot_object.at("Org.Hum") == doctest::Approx(0.7));

  std::vector<LabeledItem> single(5, {"Loc.Org", "Location"});
  std::vector<LabeledItem> mix = {{"Loc.Org", "Location"}, {"Loc.Org", "Organization"}, {"Loc.Org", "Location"}};
  CHECK(baseline_mostfreq_rp(single, mix).overall == doctest::Approx(2.0 / 3.0));

  std::vector<LabeledItem> tie = {{"Loc.Org", "Organization"}, {"Loc.Org", "Location"}};
  CHECK(train_mostfreq(tie).at("Loc.Org") == "Location");
}

TEST_CASE("wsd report buckets and counts") {
  const auto inv = fixtures::zhuang_inventory();
  std::vector<TestInstance> instances = {
      fixtures::zhuang_instance(),
      {"b", "記者報導新聞", 2, 4, "報導", "VC", std::string("baodao.3"), Task::Wsd},
      {"k", "他忘了帶鑰匙", 4, 6, "鑰匙", "Na", std::string("yaoshi.1"), Task::Wsd},
  };
  OracleScorer oracle;
  EvalOptions eo;
  eo.condition = "pos-guided";
  eo.trials = 100;
  const auto rep = evaluate(instances, &inv, nullptr, oracle, {}, eo);
  CHECK(rep.overall.count == 3);
  CHECK(rep.overall.correct == 2);
  CHECK(rep.discarded == 1);
  CHECK(rep.accuracy() == doctest::Approx(2.0 / 3.0));
  CHECK(rep.buckets.at("Simple").count == 3);
  CHECK(rep.buckets.at("Complex").count == 0);
  CHECK(rep.buckets.at("Noun").count == 2);
  CHECK(rep.buckets.at("Verb").count == 1);
  CHECK(rep.random.analytic == doctest::Approx((0.25 + 0.5 + 0.0) / 3));

  const auto j = rep.to_json();
  CHECK(j["overall"].get<double>() >= 0.0);
  CHECK(j["overall"].get<double>() <= 1.0);
  CHECK(j["baselines"]["mfs"].is_null());
  CHECK(j["counts"]["discarded"] == 1);
  CHECK(j["task"] == "WSD");
}

TEST_CASE("rp report under both conditions") {
  const auto f = fixtures::random_rp(200, 8);
  OracleScorer oracle;
  const auto train = training_items(f.instances, &f.registry);
  for (auto mode : {RpMode::Dotted, RpMode::AllTypes}) {
    const auto rep = evaluate_rp(f.instances, f.registry, mode, oracle, 0, train);
    CHECK(rep.accuracy() == 1.0);
    CHECK(rep.has_train);
    std::size_t total = 0;
    for (const auto& d : canonical_dot_objects()) total += rep.buckets.at(d.name).count;
    CHECK(total == 200);
  }
  const auto dotted = evaluate_rp(f.instances, f.registry, RpMode::Dotted, oracle);
  for (const auto& d : canonical_dot_objects())
    if (dotted.buckets.at(d.name).count)
      CHECK(dotted.buckets.at(d.name).random() == doctest::Approx(1.0 / d.classes.size()));
  const auto all = evaluate_rp(f.instances, f.registry, RpMode::AllTypes, oracle);
  CHECK(all.random.analytic == doctest::Approx(1.0 / 8));

  std::vector<TestInstance> wsd = {fixtures::zhuang_instance()};
  CHECK_THROWS_AS(evaluate_rp(wsd, f.registry, RpMode::Dotted, oracle), ArgumentError);
}
