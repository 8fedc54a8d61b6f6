// lexidot: build context-gloss pairs, disambiguate, evaluate and assemble
// proper-noun datasets from the command line.
//
// Exit codes: 0 success, 2 input error, 3 backend error, 4 network error.
// Failures print one JSON object on stderr: {"error", "message", "exit_code"}.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lexidot/dataset.hpp"
#include "lexidot/error.hpp"
#include "lexidot/evaluation.hpp"
#include "lexidot/external.hpp"
#include "lexidot/io.hpp"
#include "lexidot/kappa.hpp"
#include "lexidot/pairs.hpp"
#include "lexidot/scoring.hpp"
#include "lexidot/wikidata.hpp"

namespace fs = std::filesystem;
using namespace lexidot;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitBackend = 3;
constexpr int kExitNetwork = 4;

struct Options {
  std::string inventory;
  std::string registry;
  std::string instances;
  std::string predictions;
  std::string train;
  std::string pos_map;
  std::string mode;
  std::string backend = "overlap";
  std::string out;
  std::string summary;
  std::uint64_t seed = 0;
  int format_version = kFormatVersion;
  unsigned workers = 1;
  std::size_t trials = 10000;
  long timeout_ms = 30000;

  // kappa
  std::string agreement;

  // build-dataset
  std::string corpus;
  std::string wikidata_fixture;
  bool live = false;
  std::string category_map;
  double percentile = 0.99;
  std::size_t sample_size = 30;
  double test_fraction = 0.2;

  // import-labels
  std::string labels;
};

int fail(int code, std::string_view kind, std::string_view message) {
  std::cerr << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
  return code;
}

void apply_mode(const std::string& mode, BuildOptions& build) {
  if (mode.empty()) return;
  if (mode == "pos-guided") build.wsd_mode = WsdMode::PosGuided;
  else if (mode == "all-senses") build.wsd_mode = WsdMode::AllSenses;
  else if (mode == "dotted") build.rp_mode = RpMode::Dotted;
  else if (mode == "all-types") build.rp_mode = RpMode::AllTypes;
  else throw ArgumentError("unknown mode " + mode);
}

Task task_of_mode(const std::string& mode) {
  return mode == "dotted" || mode == "all-types" ? Task::Rp : Task::Wsd;
}

struct Resources {
  std::optional<SenseInventory> inv;
  std::optional<DotRegistry> reg;
  BuildOptions build;

  const SenseInventory* inventory() const { return inv ? &*inv : nullptr; }
  const DotRegistry* registry() const { return reg ? &*reg : nullptr; }
};

Resources load_resources(const Options& o) {
  Resources r;
  if (!o.pos_map.empty()) r.build.pos_map = PosMap::load(fs::path(o.pos_map));
  if (!o.inventory.empty()) r.inv = SenseInventory::load(fs::path(o.inventory), r.build.pos_map);
  if (!o.registry.empty()) r.reg = DotRegistry::load(fs::path(o.registry));
  r.build.seed = o.seed;
  r.build.workers = o.workers;
  apply_mode(o.mode, r.build);
  return r;
}

Json config_echo(const Options& o, std::string_view command) {
  return {{"command", command}, {"mode", o.mode},   {"backend", o.backend},
          {"seed", o.seed},     {"inventory", o.inventory}, {"registry", o.registry},
          {"instances", o.instances}};
}

void emit(const Json& doc, const std::string& path) {
  const auto text = doc.dump(2) + '\n';
  if (!path.empty()) write_atomic(path, text);
  std::cout << text;
}

int cmd_build_pairs(const Options& o) {
  auto res = load_resources(o);
  const auto instances = load_instances(fs::path(o.instances));
  const auto result = flatten(instances, res.inventory(), res.registry(), res.build);
  std::ostringstream pairs;
  write_pairs(pairs, result);
  write_atomic(o.out, pairs.str());
  Json summary = {{"format_version", o.format_version},
                  {"examples", result.examples},
                  {"sequences", result.sequences},
                  {"discarded", result.discarded},
                  {"fallbacks", result.fallbacks},
                  {"seed", o.seed},
                  {"config", config_echo(o, "build-pairs")}};
  emit(summary, o.summary);
  return 0;
}

std::unique_ptr<Scorer> open_backend(const Options& o) {
  if (o.backend.starts_with("external:"))
    return std::make_unique<ExternalScorer>(o.backend.substr(9), std::chrono::milliseconds(o.timeout_ms));
  return make_scorer(o.backend, o.seed);
}

int cmd_disambiguate(const Options& o) {
  auto res = load_resources(o);
  const auto instances = load_instances(fs::path(o.instances));
  auto scorer = open_backend(o);
  std::ostringstream out;
  std::size_t scored = 0, discarded = 0, failed = 0;
  for (const auto& inst : instances) {
    const auto d = disambiguate(inst, res.inventory(), res.registry(), *scorer, res.build);
    Json rec = {{"instance_id", d.instance_id},
                {"predicted", d.predicted ? Json(*d.predicted) : Json(nullptr)},
                {"scores", d.scores},
                {"candidates", d.candidates},
                {"status", to_string(d.status)}};
    if (!d.error.empty()) rec["error"] = d.error;
    out << rec.dump() << '\n';
    scored += d.status == OutcomeStatus::Scored;
    discarded += d.status == OutcomeStatus::Discarded;
    failed += d.status == OutcomeStatus::BackendFailed;
  }
  write_atomic(o.out, out.str());
  emit(
       {{"format_version", o.format_version},
        {"instances", instances.size()},
        {"scored", scored},
        {"discarded", discarded},
        {"backend_failed", failed},
        {"seed", o.seed},
        {"config", config_echo(o, "disambiguate")}},
       o.summary);
  return 0;
}

std::map<std::string, Disambiguation> load_predictions(const fs::path& path) {
  std::map<std::string, Disambiguation> out;
  auto in = open_input(path);
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    Disambiguation d;
    d.instance_id = require_string(rec, "instance_id", line);
    if (auto it = rec.find("predicted"); it != rec.end() && it->is_string()) d.predicted = it->get<std::string>();
    if (auto it = rec.find("candidates"); it != rec.end() && it->is_array())
      for (const auto& c : *it) d.candidates.push_back(c.get<std::string>());
    if (auto it = rec.find("scores"); it != rec.end() && it->is_array())
      for (const auto& s : *it) d.scores.push_back(s.get<double>());
    d.status = d.predicted ? OutcomeStatus::Scored : OutcomeStatus::BackendFailed;
    if (auto it = rec.find("status"); it != rec.end()) {
      auto st = parse_outcome_status(it->is_string() ? it->get<std::string>() : std::string{});
      if (!st) throw ParseError("unknown status", line);
      d.status = *st;
    }
    if (d.status == OutcomeStatus::Scored && !d.predicted) throw ParseError("scored prediction without a label", line);
    if (!out.emplace(d.instance_id, d).second)
      throw ValidationError("duplicate prediction for instance " + d.instance_id);
  });
  return out;
}

int cmd_evaluate(const Options& o) {
  auto res = load_resources(o);
  const Task task = task_of_mode(o.mode);
  std::vector<TestInstance> instances;
  for (auto& inst : load_instances(fs::path(o.instances)))
    if (inst.task == task) instances.push_back(std::move(inst));
  if (instances.empty()) throw ValidationError("no " + std::string(to_string(task)) + " instances to evaluate");

  std::vector<LabeledItem> train;
  if (!o.train.empty()) {
    auto train_instances = load_instances(fs::path(o.train));
    std::erase_if(train_instances, [&](const TestInstance& t) { return t.task != task; });
    train = training_items(train_instances, res.registry());
  }

  EvalOptions eo;
  eo.condition = o.mode;
  eo.backend = o.backend;
  eo.seed = o.seed;
  eo.trials = o.trials;
  eo.pos_map = res.build.pos_map;

  std::vector<EvalRecord> records;
  if (!o.predictions.empty()) {
    auto preds = load_predictions(o.predictions);
    for (const auto& inst : instances) {
      auto it = preds.find(inst.id);
      if (it == preds.end()) throw ValidationError("no prediction for instance " + inst.id);
      records.push_back(make_record(inst, it->second, res.registry()));
      preds.erase(it);
    }
    // leftovers may belong to the other task's instances in the same file
    std::set<std::string> known;
    for (const auto& inst : load_instances(fs::path(o.instances))) known.insert(inst.id);
    for (const auto& [id, d] : preds)
      if (!known.contains(id)) throw ValidationError("prediction for unknown instance " + id);
  } else {
    auto scorer = open_backend(o);
    for (const auto& inst : instances)
      records.push_back(make_record(inst, disambiguate(inst, res.inventory(), res.registry(), *scorer, res.build),
                                    res.registry()));
  }
  const auto report = build_report(records, eo, train, res.inventory(), res.registry());
  Json doc = report.to_json();
  doc["config"]["instances"] = o.instances;
  doc["config"]["predictions"] = o.predictions;
  doc["config"]["train"] = o.train;
  doc["format_version"] = o.format_version;
  emit(doc, o.out);
  return 0;
}

int cmd_kappa(const Options& o) {
  const auto m = AgreementMatrix::load_csv(fs::path(o.agreement));
  Json doc = {{"format_version", o.format_version}, {"kappa", fleiss_kappa(m)}, {"raw_agreement", raw_agreement(m)},
              {"items", m.items()},                 {"raters", m.raters()},     {"categories", m.categories()}};
  emit(doc, o.out);
  return 0;
}

int cmd_build_dataset(const Options& o) {
  const auto corpus = load_corpus(fs::path(o.corpus));
  const CategoryMap map = o.category_map.empty() ? CategoryMap::builtin() : CategoryMap::load(fs::path(o.category_map));
  std::unique_ptr<WikidataClient> client;
  if (o.live) {
    const char* endpoint = std::getenv("LEXIDOT_WIKIDATA_ENDPOINT");
    if (!endpoint || !*endpoint) throw ArgumentError("--live needs LEXIDOT_WIKIDATA_ENDPOINT");
    client = std::make_unique<LiveClient>(endpoint);
  } else {
    if (o.wikidata_fixture.empty()) throw ArgumentError("either --wikidata-fixture or --live is required");
    client = std::make_unique<FixtureClient>(FixtureClient::load(fs::path(o.wikidata_fixture)));
  }
  DatasetConfig cfg;
  cfg.percentile = o.percentile;
  cfg.sample_size = o.sample_size;
  cfg.test_fraction = o.test_fraction;
  cfg.seed = o.seed;

  DatasetResult result;
  try {
    result = build_dataset(corpus, *client, map, cfg);
  } catch (const TransportError& e) {
    throw TransportError(std::string("stage resolve: ") + e.what());
  }

  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ostringstream train, test, registry;
  save_instances(train, result.train);
  save_instances(test, result.test);
  result.registry.save(registry);
  write_atomic(dir / "train.jsonl", train.str());
  write_atomic(dir / "test.jsonl", test.str());
  write_atomic(dir / "registry.jsonl", registry.str());
  result.manifest["format_version"] = o.format_version;
  result.manifest["config"]["corpus"] = o.corpus;
  result.manifest["config"]["client"] = o.live ? "live" : "fixture";
  emit(result.manifest, (dir / "manifest.json").string());
  return 0;
}

int cmd_import_labels(const Options& o) {
  auto res = load_resources(o);
  auto instances = load_instances(fs::path(o.instances));
  auto in = open_input(o.labels);
  const auto labels = load_labels(in);
  instances = import_labels(std::move(instances), labels, res.inventory(), res.registry());
  std::ostringstream out;
  save_instances(out, instances);
  write_atomic(o.out, out.str());
  emit({{"format_version", o.format_version}, {"instances", instances.size()}, {"labelled", labels.size()}}, {});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexidot: word sense and regular polysemy disambiguation toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed (recorded in every output)");
    sub->add_option("--format-version", o.format_version, "Output schema version")->check(CLI::IsMember({1}));
  };
  auto resources = [&](CLI::App* sub) {
    sub->add_option("--inventory", o.inventory, "Sense inventory JSONL");
    sub->add_option("--registry", o.registry, "Dot-object registry JSONL");
    sub->add_option("--pos-map", o.pos_map, "CKIP tag -> POS category TSV");
    sub->add_option("--mode", o.mode, "pos-guided | all-senses | dotted | all-types")
        ->check(CLI::IsMember({"pos-guided", "all-senses", "dotted", "all-types"}));
  };

  auto* build_pairs = app.add_subcommand("build-pairs", "Flatten instances into context-gloss pairs");
  common(build_pairs);
  resources(build_pairs);
  build_pairs->add_option("--instances", o.instances, "Instance JSONL")->required();
  build_pairs->add_option("--out", o.out, "Pair JSONL to write")->required();
  build_pairs->add_option("--summary", o.summary, "Also write the summary JSON here");
  build_pairs->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* disamb = app.add_subcommand("disambiguate", "Predict a candidate for every instance");
  common(disamb);
  resources(disamb);
  disamb->add_option("--instances", o.instances, "Instance JSONL")->required();
  disamb->add_option("--backend", o.backend, "overlap | random | oracle | external:<command>");
  disamb->add_option("--timeout-ms", o.timeout_ms, "External scorer timeout per request");
  disamb->add_option("--out", o.out, "Prediction JSONL to write")->required();
  disamb->add_option("--summary", o.summary, "Also write the summary JSON here");

  auto* evaluate = app.add_subcommand("evaluate", "Accuracy report with buckets and baselines");
  common(evaluate);
  resources(evaluate);
  evaluate->add_option("--instances", o.instances, "Gold-labelled test instances")->required();
  auto* preds = evaluate->add_option("--predictions", o.predictions, "Prediction JSONL from disambiguate");
  evaluate->add_option("--backend", o.backend, "Score inline instead of reading predictions")->excludes(preds);
  evaluate->add_option("--timeout-ms", o.timeout_ms, "External scorer timeout per request");
  evaluate->add_option("--train", o.train, "Labelled training instances for MFS / MostFreq");
  evaluate->add_option("--trials", o.trials, "Random-baseline simulation sweeps");
  evaluate->add_option("--out", o.out, "Report JSON to write");

  auto* kappa = app.add_subcommand("kappa", "Fleiss' kappa of an agreement table");
  common(kappa);
  kappa->add_option("--agreement", o.agreement, "CSV: one row per item, one column per category")->required();
  kappa->add_option("--out", o.out, "Result JSON to write");

  auto* dataset = app.add_subcommand("build-dataset", "Proper-noun dataset from an NER-tagged corpus");
  common(dataset);
  dataset->add_option("--corpus", o.corpus, "Corpus JSONL")->required();
  auto* fixture = dataset->add_option("--wikidata-fixture", o.wikidata_fixture, "Offline Wikidata JSONL");
  dataset->add_flag("--live", o.live, "Query LEXIDOT_WIKIDATA_ENDPOINT")->excludes(fixture);
  dataset->add_option("--category-map", o.category_map, "Category -> dot object JSONL");
  dataset->add_option("--percentile", o.percentile, "Frequency percentile cut")->check(CLI::Range(0.0, 1.0));
  dataset->add_option("--sample-size", o.sample_size, "Sentences per word");
  dataset->add_option("--test-fraction", o.test_fraction, "Test split share");
  dataset->add_option("--out-dir", o.out, "Output directory")->required();

  auto* labels = app.add_subcommand("import-labels", "Attach validated gold labels to instances");
  common(labels);
  resources(labels);
  labels->add_option("--instances", o.instances, "Instance JSONL")->required();
  labels->add_option("--labels", o.labels, "JSONL {instance_id, gold}")->required();
  labels->add_option("--out", o.out, "Labelled instance JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitInput, "usage", e.what());
  }

  try {
    if (*build_pairs) return cmd_build_pairs(o);
    if (*disamb) return cmd_disambiguate(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*kappa) return cmd_kappa(o);
    if (*dataset) return cmd_build_dataset(o);
    if (*labels) return cmd_import_labels(o);
  } catch (const BackendError& e) {
    return fail(kExitBackend, e.kind(), e.what());
  } catch (const TransportError& e) {
    return fail(kExitNetwork, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(kExitInput, e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(kExitInput, "io", e.what());
  } catch (const Json::exception& e) {
    return fail(kExitInput, "parse", e.what());
  }
  return kExitInput;
}
