#include "lexidot/evaluation.hpp"

#include <algorithm>
#include <random>

#include "lexidot/error.hpp"

namespace lexidot {

double accuracy(std::span<const std::optional<std::string>> predictions,
                std::span<const std::optional<std::string>> golds) {
  if (predictions.size() != golds.size())
    throw ArgumentError("accuracy: " + std::to_string(predictions.size()) + " predictions for " +
                        std::to_string(golds.size()) + " golds");
  if (predictions.empty()) throw ArgumentError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) hits += predictions[i] && golds[i] && *predictions[i] == *golds[i];
  return static_cast<double>(hits) / static_cast<double>(golds.size());
}

std::string_view to_string(Complexity c) noexcept { return c == Complexity::Simple ? "Simple" : "Complex"; }

Complexity complexity_of(std::string_view lemma, const SenseInventory& inv) {
  return inv.sense_count(lemma) <= kSimpleMaxSenses ? Complexity::Simple : Complexity::Complex;
}

std::vector<Complexity> bucket_by_complexity(std::span<const TestInstance> instances, const SenseInventory& inv) {
  std::vector<Complexity> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(complexity_of(inst.lemma, inv));
  return out;
}

std::string_view to_string(PosBucket b) noexcept {
  switch (b) {
    case PosBucket::Noun: return "Noun";
    case PosBucket::Verb: return "Verb";
    case PosBucket::Other: return "Other";
  }
  return "Other";
}

PosBucket pos_bucket(std::string_view pos_raw, const PosMap& pos_map) {
  switch (pos_map(pos_raw)) {
    case PosCategory::CommonNoun: return PosBucket::Noun;
    case PosCategory::Verb: return PosBucket::Verb;
    default: return PosBucket::Other;
  }
}

RandomBaseline baseline_random(std::span<const RandomCase> cases, std::uint64_t seed, std::size_t trials) {
  if (cases.empty()) throw ArgumentError("random baseline over no instances");
  RandomBaseline out;
  out.seed = seed;
  out.trials = trials;
  double expected = 0.0;
  for (const auto& c : cases) {
    if (c.candidates == 0) throw ArgumentError("random baseline: instance with zero candidates");
    if (c.gold_present) expected += 1.0 / static_cast<double>(c.candidates);
  }
  const double n = static_cast<double>(cases.size());
  out.analytic = expected / n;

  if (trials == 0) return out;
  std::mt19937_64 rng(seed);
  // WLOG the gold candidate sits at index 0 of each case
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t)
    for (const auto& c : cases) {
      std::uniform_int_distribution<std::size_t> pick(0, c.candidates - 1);
      hits += pick(rng) == 0 && c.gold_present;
    }
  out.monte_carlo = static_cast<double>(hits) / (n * static_cast<double>(trials));
  return out;
}

namespace {

// Position of `label` in the tie-breaking order for `key`.
std::size_t tie_rank(const std::string& key, const std::string& label, const SenseInventory* inv) {
  if (inv && inv->contains(key)) {
    const auto senses = inv->senses_of(key);
    for (std::size_t i = 0; i < senses.size(); ++i)
      if (senses[i]->sense_id == label) return i;
    return senses.size();
  }
  return 0;
}

}  // namespace

std::map<std::string, std::string> train_mfs(std::span<const LabeledItem> train, const SenseInventory* inv) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const auto& item : train) ++counts[item.key][item.label];

  std::map<std::string, std::string> out;
  for (const auto& [lemma, per_sense] : counts) {
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    std::size_t best_rank = 0;
    for (const auto& [sense, n] : per_sense) {
      const std::size_t rank = tie_rank(lemma, sense, inv);
      // map iteration is lexicographic, so equal ranks keep the smaller label
      if (!best || n > best_count || (n == best_count && rank < best_rank)) {
        best = &sense;
        best_count = n;
        best_rank = rank;
      }
    }
    if (best_count >= 2) out.emplace(lemma, *best);
  }
  return out;
}

double baseline_mfs(std::span<const LabeledItem> train, std::span<const LabeledItem> test, const SenseInventory* inv) {
  if (test.empty()) throw ArgumentError("MFS baseline over an empty test set");
  const auto mfs = train_mfs(train, inv);
  std::size_t hits = 0;
  for (const auto& item : test) {
    auto it = mfs.find(item.key);
    hits += it != mfs.end() && it->second == item.label;
  }
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::map<std::string, std::string> train_mostfreq(std::span<const LabeledItem> train) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const auto& item : train) ++counts[item.key][item.label];

  std::map<std::string, std::string> out;
  for (const auto& [dot_name, per_class] : counts) {
    std::vector<std::string> order;
    try {
      for (auto c : parse_dot_object(dot_name).classes) order.emplace_back(to_string(c));
    } catch (const ValidationError&) {
    }
    auto rank = [&](const std::string& label) {
      auto it = std::find(order.begin(), order.end(), label);
      return static_cast<std::size_t>(it - order.begin());
    };
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [label, n] : per_class)
      if (!best || n > best_count || (n == best_count && rank(label) < rank(*best))) {
        best = &label;
        best_count = n;
      }
    out.emplace(dot_name, *best);
  }
  return out;
}

MostFreqResult baseline_mostfreq_rp(std::span<const LabeledItem> train, std::span<const LabeledItem> test) {
  const auto majority = train_mostfreq(train);
  MostFreqResult out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // hits, total
  std::size_t hits = 0;
  for (const auto& item : test) {
    auto it = majority.find(item.key);
    const bool hit = it != majority.end() && it->second == item.label;
    hits += hit;
    auto& t = tally[item.key];
    t.first += hit;
    ++t.second;
  }
  if (!test.empty()) out.overall = static_cast<double>(hits) / static_cast<double>(test.size());
  for (const auto& [dot_name, t] : tally)
    out.per_dot_object[dot_name] = static_cast<double>(t.first) / static_cast<double>(t.second);
  return out;
}

EvalRecord make_record(const TestInstance& inst, const Disambiguation& d, const DotRegistry* reg) {
  EvalRecord r;
  r.instance_id = inst.id;
  r.task = inst.task;
  r.lemma = inst.lemma;
  r.pos_raw = inst.pos_raw;
  r.gold = inst.gold;
  r.predicted = d.predicted;
  r.status = d.status;
  r.candidates = d.candidates.size();
  r.gold_in_candidates = inst.gold && std::find(d.candidates.begin(), d.candidates.end(), *inst.gold) != d.candidates.end();
  if (inst.task == Task::Rp && reg && reg->contains(inst.lemma)) r.dot_object = reg->entry(inst.lemma).dot_object->name;
  return r;
}

BucketStats& BucketStats::operator+=(const BucketStats& o) noexcept {
  count += o.count;
  correct += o.correct;
  random_sum += o.random_sum;
  baseline_correct += o.baseline_correct;
  return *this;
}

std::vector<LabeledItem> training_items(std::span<const TestInstance> instances, const DotRegistry* reg) {
  std::vector<LabeledItem> out;
  for (const auto& inst : instances) {
    if (!inst.gold) continue;
    if (inst.task == Task::Wsd) {
      out.push_back({inst.lemma, *inst.gold});
    } else if (reg && reg->contains(inst.lemma)) {
      out.push_back({reg->entry(inst.lemma).dot_object->name, *inst.gold});
    }
  }
  return out;
}

EvalReport build_report(std::span<const EvalRecord> records, const EvalOptions& opts,
                        std::span<const LabeledItem> train, const SenseInventory* inv, const DotRegistry* reg) {
  if (records.empty()) throw ArgumentError("nothing to evaluate");
  EvalReport report;
  report.task = records.front().task;
  report.options = opts;
  report.has_train = !train.empty();

  const auto baseline = report.task == Task::Wsd ? train_mfs(train, inv) : train_mostfreq(train);
  if (report.task == Task::Wsd && !inv) throw ArgumentError("WSD report needs the sense inventory");
  if (report.task == Task::Rp) {
    for (const auto& d : canonical_dot_objects()) report.buckets[d.name];
  } else {
    for (auto c : {Complexity::Simple, Complexity::Complex}) report.buckets[std::string(to_string(c))];
    for (auto b : {PosBucket::Noun, PosBucket::Verb, PosBucket::Other}) report.buckets[std::string(to_string(b))];
  }

  std::vector<RandomCase> cases;
  cases.reserve(records.size());
  for (const auto& r : records) {
    if (r.task != report.task) throw ArgumentError("report mixes WSD and RP records");
    BucketStats s;
    s.count = 1;
    s.correct = r.status == OutcomeStatus::Scored && r.predicted && r.gold && *r.predicted == *r.gold;
    const bool offered = r.status != OutcomeStatus::Discarded && r.candidates > 0;
    if (offered && r.gold_in_candidates) s.random_sum = 1.0 / static_cast<double>(r.candidates);
    cases.push_back(offered ? RandomCase{r.candidates, r.gold_in_candidates} : RandomCase{1, false});

    std::string dot_object = r.dot_object;
    if (dot_object.empty() && r.task == Task::Rp && reg && reg->contains(r.lemma))
      dot_object = reg->entry(r.lemma).dot_object->name;
    const std::string& key = report.task == Task::Wsd ? r.lemma : dot_object;
    if (auto it = baseline.find(key); it != baseline.end() && r.gold && r.status != OutcomeStatus::Discarded)
      s.baseline_correct = it->second == *r.gold;

    report.overall += s;
    if (report.task == Task::Wsd) {
      report.buckets[std::string(to_string(complexity_of(r.lemma, *inv)))] += s;
      report.buckets[std::string(to_string(pos_bucket(r.pos_raw, opts.pos_map)))] += s;
    } else {
      report.buckets[dot_object.empty() ? std::string("unregistered") : dot_object] += s;
    }
    report.discarded += r.status == OutcomeStatus::Discarded;
    report.backend_failed += r.status == OutcomeStatus::BackendFailed;
    report.gold_not_offered += offered && r.gold && !r.gold_in_candidates;
  }
  report.random = baseline_random(cases, opts.seed, opts.trials);
  return report;
}

Json EvalReport::to_json() const {
  const bool wsd = task == Task::Wsd;
  const char* baseline_key = wsd ? "mfs" : "mostfreq";
  Json j;
  j["format_version"] = kFormatVersion;
  j["task"] = to_string(task);
  j["condition"] = options.condition;
  j["overall"] = accuracy();
  j["counts"] = {{"instances", overall.count},
                 {"correct", overall.correct},
                 {"discarded", discarded},
                 {"backend_failed", backend_failed},
                 {"gold_not_in_candidates", gold_not_offered}};
  j["buckets"] = Json::object();
  for (const auto& [name, b] : buckets) {
    Json entry = {{"count", b.count}, {"accuracy", b.accuracy()}, {"random", b.random()}};
    entry[baseline_key] = has_train ? Json(b.baseline()) : Json(nullptr);
    j["buckets"][name] = std::move(entry);
  }
  j["baselines"] = {{"random",
                     {{"analytic", random.analytic},
                      {"monte_carlo", random.monte_carlo},
                      {"trials", random.trials},
                      {"seed", random.seed}}}};
  j["baselines"][baseline_key] = has_train ? Json(overall.baseline()) : Json(nullptr);
  j["config"] = {{"condition", options.condition},
                 {"backend", options.backend},
                 {"seed", options.seed},
                 {"trials", options.trials},
                 {"baseline_training", "train split only"},
                 {"unscored_counted_as", "incorrect"}};
  return j;
}

EvalReport evaluate(std::span<const TestInstance> instances, const SenseInventory* inv, const DotRegistry* reg,
                    Scorer& scorer, const BuildOptions& build, const EvalOptions& opts,
                    std::span<const LabeledItem> train) {
  std::vector<EvalRecord> records;
  records.reserve(instances.size());
  for (const auto& inst : instances)
    records.push_back(make_record(inst, disambiguate(inst, inv, reg, scorer, build), reg));
  return build_report(records, opts, train, inv, reg);
}

EvalReport evaluate_rp(std::span<const TestInstance> instances, const DotRegistry& reg, RpMode mode, Scorer& scorer,
                       std::uint64_t seed, std::span<const LabeledItem> train) {
  BuildOptions build;
  build.rp_mode = mode;
  build.seed = seed;
  EvalOptions opts;
  opts.condition = std::string(to_string(mode));
  opts.backend = scorer.name();
  opts.seed = seed;
  for (const auto& inst : instances)
    if (inst.task != Task::Rp) throw ArgumentError("evaluate_rp given non-RP instance " + inst.id);
  return evaluate(instances, nullptr, &reg, scorer, build, opts, train);
}

}  // namespace lexidot
