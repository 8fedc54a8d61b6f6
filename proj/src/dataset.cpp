#include "lexidot/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "lexidot/error.hpp"
#include "lexidot/hash.hpp"
#include "lexidot/utf8.hpp"

namespace lexidot {

std::string_view to_string(EntityType t) noexcept {
  switch (t) {
    case EntityType::GPE: return "GPE";
    case EntityType::ORG: return "ORG";
    case EntityType::LOC: return "LOC";
    case EntityType::PRODUCT: return "PRODUCT";
    case EntityType::WORK_OF_ART: return "WORK_OF_ART";
    case EntityType::Other: return "other";
  }
  return "other";
}

EntityType parse_entity_type(std::string_view s) noexcept {
  for (auto t : kRelevantEntityTypes)
    if (to_string(t) == s) return t;
  if (s == "WORK-OF-ART") return EntityType::WORK_OF_ART;
  return EntityType::Other;
}

std::vector<CorpusSentence> load_corpus(std::istream& in) {
  std::vector<CorpusSentence> corpus;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    CorpusSentence cs;
    cs.sentence = require_string(rec, "sentence", line);
    const auto cps = utf8::decode(cs.sentence);
    auto it = rec.find("mentions");
    if (it != rec.end() && !it->is_array()) throw ParseError("field \"mentions\" must be an array", line);
    if (it != rec.end()) {
      for (const auto& m : *it) {
        if (!m.is_object()) throw ParseError("mentions must be objects", line);
        EntityMention em;
        em.surface = require_string(m, "surface", line);
        em.type_raw = require_string(m, "type", line);
        em.type = parse_entity_type(em.type_raw);
        em.sentence_index = corpus.size();
        const auto start = require_int(m, "start", line);
        const auto end = require_int(m, "end", line);
        if (start < 0 || start >= end || static_cast<std::size_t>(end) > cps.size())
          throw SpanError("line " + std::to_string(line) + ": mention span out of range");
        em.start = static_cast<std::size_t>(start);
        em.end = static_cast<std::size_t>(end);
        if (utf8::encode(std::u32string_view(cps).substr(em.start, em.end - em.start)) != em.surface)
          throw SpanError("line " + std::to_string(line) + ": mention span does not cover \"" + em.surface + "\"");
        cs.mentions.push_back(std::move(em));
      }
    }
    corpus.push_back(std::move(cs));
  });
  return corpus;
}

std::vector<CorpusSentence> load_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_corpus(in);
}

std::vector<EntityMention> all_mentions(std::span<const CorpusSentence> corpus) {
  std::vector<EntityMention> out;
  for (const auto& s : corpus) out.insert(out.end(), s.mentions.begin(), s.mentions.end());
  return out;
}

std::vector<EntityMention> filter_entity_types(std::span<const EntityMention> mentions) {
  std::vector<EntityMention> out;
  std::copy_if(mentions.begin(), mentions.end(), std::back_inserter(out),
               [](const EntityMention& m) { return m.type != EntityType::Other; });
  return out;
}

std::map<EntityType, std::map<std::string, std::size_t>> type_frequencies(std::span<const EntityMention> mentions) {
  std::map<EntityType, std::map<std::string, std::size_t>> out;
  for (const auto& m : mentions) ++out[m.type][m.surface];
  return out;
}

std::vector<std::string> frequency_percentile_filter(const std::map<std::string, std::size_t>& counts,
                                                     double percentile) {
  if (counts.empty()) throw ArgumentError("percentile filter over no word types");
  if (!(percentile > 0.0 && percentile < 1.0)) throw ArgumentError("percentile must lie in (0, 1)");
  std::vector<std::size_t> freqs;
  freqs.reserve(counts.size());
  for (const auto& [w, f] : counts) freqs.push_back(f);
  std::sort(freqs.begin(), freqs.end());
  // 1e-9 absorbs representation error in products such as 0.99 * 100
  auto rank = static_cast<std::size_t>(std::floor(percentile * static_cast<double>(freqs.size()) + 1e-9));
  rank = std::min(rank, freqs.size() - 1);
  const std::size_t threshold = freqs[rank];

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [w, f] : counts)
    if (f >= threshold) kept.emplace_back(w, f);
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  out.reserve(kept.size());
  for (auto& [w, f] : kept) out.push_back(std::move(w));
  return out;
}

std::vector<ResolvedWord> resolve_wikidata(std::string_view word, WikidataClient& client) {
  auto entries = client.lookup(word);
  std::vector<ResolvedWord> out;
  if (entries.size() == 1) {
    out.push_back({std::string(word), std::string(word), std::move(entries.front())});
    return out;
  }
  std::map<std::string, std::size_t> label_uses;
  for (const auto& e : entries) ++label_uses[e.label];
  for (auto& e : entries) {
    std::string name = e.label;
    if (name.empty() || label_uses[name] > 1 || name == word) name = (name.empty() ? std::string(word) : name) + "(" + e.qid + ")";
    out.push_back({std::move(name), std::string(word), std::move(e)});
  }
  return out;
}

Resolution resolve_all(std::span<const std::string> words, WikidataClient& client) {
  Resolution r;
  r.input = words.size();
  for (const auto& w : words) {
    auto resolved = resolve_wikidata(w, client);
    if (resolved.empty()) {
      r.dropped.push_back(w);
      continue;
    }
    r.extra_splits += resolved.size() - 1;
    for (auto& rw : resolved) r.words.push_back(std::move(rw));
  }
  return r;
}

CategoryMap CategoryMap::builtin() {
  static const std::vector<std::pair<std::string_view, std::string_view>> kTable = {
      {"work of art", "Info.Phy"},
      {"human-geographic territorial entity", "Loc.Org"},
      {"government agency", "Loc.Org"},
      {"industrial zone", "Loc.Org"},
      {"intergovernmental organization", "Loc.Org"},
      {"court", "Loc.Org"},
      {"Chinese temple", "Loc.Org"},
      {"museum", "Loc.Org"},
      {"political party", "Org.Hum"},
      {"military unit", "Org.Hum"},
      {"sports organization", "Org.Hum"},
      {"religious organization", "Org.Hum"},
      {"religious identity", "Org.Hum"},
      {"mass media", "Org.Info.Phy.Hum"},
      {"university", "Org.Loc.Hum"},
      {"educational institution", "Org.Loc.Hum"},
      {"organization", "Org.Loc.Hum"},
      {"hospital", "Org.Loc.Hum"},
      {"award", "Phy.Evt.Hum"},
      {"business", "Prcr.Prct.Loc"},
  };
  CategoryMap map;
  for (const auto& [cat, dot] : kTable) map.add(std::string(cat), parse_dot_object(dot));
  return map;
}

CategoryMap CategoryMap::load(std::istream& in) {
  CategoryMap map;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    auto cat = require_string(rec, "category", line);
    const auto dot = require_string(rec, "dot_object", line);
    try {
      map.add(std::move(cat), parse_dot_object(dot));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  });
  return map;
}

CategoryMap CategoryMap::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load(in);
}

void CategoryMap::add(std::string category, const DotObject& dot) {
  if (category.empty()) throw ValidationError("empty category");
  const DotObject& canonical = parse_dot_object(dot.name);
  auto [it, inserted] = map_.emplace(std::move(category), &canonical);
  if (!inserted && it->second != &canonical)
    throw ValidationError("category \"" + it->first + "\" mapped to two dot objects");
}

const DotObject* CategoryMap::find(std::string_view category) const noexcept {
  auto it = map_.find(category);
  return it == map_.end() ? nullptr : it->second;
}

void CategoryMap::save(std::ostream& out) const {
  for (const auto& [cat, dot] : map_) out << Json{{"category", cat}, {"dot_object", dot->name}}.dump() << '\n';
}

std::optional<DotAssignment> map_category_to_dot(const WikidataEntry& entry, const CategoryMap& map) {
  for (const auto& cat : entry.categories)
    if (const DotObject* dot = map.find(cat)) return DotAssignment{dot, cat};
  return std::nullopt;
}

namespace {

std::vector<TestInstance> sample_from(std::span<const CorpusSentence> corpus, std::span<const EntityMention> occurrences,
                                      std::string_view word, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> chosen(occurrences.size());
  std::iota(chosen.begin(), chosen.end(), 0);
  if (occurrences.size() > n) {
    std::mt19937_64 rng(seeded_hash(seed, word));
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, chosen.size() - 1);
      std::swap(chosen[i], chosen[pick(rng)]);
    }
    chosen.resize(n);
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<TestInstance> out;
  out.reserve(chosen.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const auto& m = occurrences[chosen[k]];
    TestInstance inst;
    inst.id = std::string(word) + "#" + std::to_string(k);
    inst.sentence = corpus[m.sentence_index].sentence;
    inst.start = m.start;
    inst.end = m.end;
    inst.lemma = std::string(word);
    inst.pos_raw = "Nb";
    inst.task = Task::Rp;
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<EntityMention> occurrences_of(std::span<const CorpusSentence> corpus, std::string_view word) {
  std::vector<EntityMention> out;
  for (const auto& s : corpus)
    for (const auto& m : s.mentions)
      if (m.surface == word && m.type != EntityType::Other) out.push_back(m);
  return out;
}

}  // namespace

std::vector<TestInstance> sample_sentences(std::span<const CorpusSentence> corpus, std::string_view word,
                                           std::size_t n, std::uint64_t seed) {
  const auto occ = occurrences_of(corpus, word);
  return sample_from(corpus, occ, word, n, seed);
}

Split split_dataset(std::span<const TestInstance> instances, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ArgumentError("test fraction must lie in (0, 1)");
  const std::size_t n = instances.size();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[instances[i].lemma].push_back(i);

  // Systematic sampling inside each lemma: member j of a group of size m
  // sits at (j + u) / m, so every lemma is spread evenly over [0, 1).
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> key(n);
  for (auto& [lemma, members] : groups) {
    std::shuffle(members.begin(), members.end(), rng);
    const double u = unit(rng);
    const double m = static_cast<double>(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) key[members[j]] = {(static_cast<double>(j) + u) / m, unit(rng)};
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

  std::vector<bool> in_test(n, false);
  for (std::size_t i = 0; i < n_test; ++i) in_test[order[i]] = true;
  Split split;
  for (std::size_t i = 0; i < n; ++i) (in_test[i] ? split.test : split.train).push_back(instances[i]);
  return split;
}

std::map<std::string, std::string> load_labels(std::istream& in) {
  std::map<std::string, std::string> labels;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    auto id = require_string(rec, "instance_id", line);
    auto gold = require_string(rec, "gold", line);
    if (!labels.emplace(std::move(id), std::move(gold)).second)
      throw ValidationError("line " + std::to_string(line) + ": duplicate label");
  });
  return labels;
}

std::vector<TestInstance> import_labels(std::vector<TestInstance> instances,
                                        const std::map<std::string, std::string>& labels, const SenseInventory* inv,
                                        const DotRegistry* reg) {
  std::map<std::string, TestInstance*> by_id;
  for (auto& inst : instances) by_id[inst.id] = &inst;
  for (const auto& [id, gold] : labels) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ValidationError("label for unknown instance " + id);
    TestInstance& inst = *it->second;
    bool valid = false;
    if (inst.task == Task::Wsd) {
      if (!inv) throw ValidationError("WSD labels need the sense inventory");
      for (const Sense* s : inv->senses_of(inst.lemma)) valid = valid || s->sense_id == gold;
    } else {
      if (!reg) throw ValidationError("RP labels need the dot registry");
      for (auto c : dot_candidates(inst.lemma, *reg)) valid = valid || to_string(c) == gold;
    }
    if (!valid) throw ValidationError("label \"" + gold + "\" is not a candidate of instance " + id);
    inst.gold = gold;
  }
  return instances;
}

DatasetResult build_dataset(std::span<const CorpusSentence> corpus, WikidataClient& client, const CategoryMap& map,
                            const DatasetConfig& config) {
  DatasetResult result;
  Json& manifest = result.manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["config"] = {{"percentile", config.percentile},
                        {"sample_size", config.sample_size},
                        {"test_fraction", config.test_fraction},
                        {"seed", config.seed}};

  const auto mentions = all_mentions(corpus);
  const auto filtered = filter_entity_types(mentions);
  Json extract = {{"sentences", corpus.size()}, {"mentions", mentions.size()}, {"mentions_filtered", filtered.size()}};
  Json by_type = Json::object();
  for (const auto& m : filtered) by_type[std::string(to_string(m.type))] = by_type.value(std::string(to_string(m.type)), 0) + 1;
  extract["filtered_by_type"] = by_type;
  manifest["stages"]["extracted"] = extract;

  // per-type percentile selection, then the union of survivors
  std::set<std::string> selected;
  Json selection = Json::object();
  for (const auto& [type, counts] : type_frequencies(filtered)) {
    const auto kept = frequency_percentile_filter(counts, config.percentile);
    selection[std::string(to_string(type))] = {{"word_types", counts.size()}, {"survivors", kept.size()}};
    selected.insert(kept.begin(), kept.end());
  }
  const std::vector<std::string> candidates(selected.begin(), selected.end());
  manifest["stages"]["filtered"] = {{"per_type", selection}, {"words", candidates.size()}};

  const auto resolution = resolve_all(candidates, client);
  manifest["stages"]["resolved"] = {{"input", resolution.input},
                                    {"dropped", resolution.dropped.size()},
                                    {"extra_splits", resolution.extra_splits},
                                    {"output", resolution.words.size()},
                                    {"dropped_words", resolution.dropped}};

  // map each resolved word; register corpus surfaces whose resolutions agree
  std::map<std::string, std::vector<std::pair<const DotObject*, std::string>>> by_source;
  std::vector<std::string> unmapped;
  Json per_dot = Json::object();
  for (const auto& d : canonical_dot_objects()) per_dot[d.name] = 0;
  for (const auto& rw : resolution.words) {
    auto assignment = map_category_to_dot(rw.entry, map);
    if (!assignment) {
      unmapped.push_back(rw.word);
      by_source[rw.source].emplace_back(nullptr, std::string{});
      continue;
    }
    per_dot[assignment->dot_object->name] = per_dot[assignment->dot_object->name].get<std::size_t>() + 1;
    by_source[rw.source].emplace_back(assignment->dot_object, assignment->category);
  }
  std::vector<std::string> ambiguous;
  std::vector<std::string> registered;
  for (const auto& [source, parts] : by_source) {
    const auto* first = parts.front().first;
    const bool agree = std::all_of(parts.begin(), parts.end(), [&](const auto& p) { return p.first == first; });
    if (!first) continue;
    if (!agree) {
      ambiguous.push_back(source);
      continue;
    }
    result.registry.add(source, *first, parts.front().second);
    registered.push_back(source);
  }
  manifest["stages"]["mapped"] = {{"mapped", resolution.words.size() - unmapped.size()},
                                  {"unmapped", unmapped.size()},
                                  {"unmapped_words", unmapped},
                                  {"by_dot_object", per_dot},
                                  {"ambiguous_surfaces", ambiguous},
                                  {"registered", registered.size()}};

  std::vector<TestInstance> instances;
  std::vector<std::string> without_occurrences;
  for (const auto& word : registered) {
    auto sampled = sample_sentences(corpus, word, config.sample_size, config.seed);
    if (sampled.empty()) without_occurrences.push_back(word);
    for (auto& inst : sampled) instances.push_back(std::move(inst));
  }
  manifest["stages"]["sampled"] = {{"words", registered.size()},
                                   {"instances", instances.size()},
                                   {"words_without_occurrences", without_occurrences}};

  if (!instances.empty()) {
    auto split = split_dataset(instances, config.test_fraction, config.seed);
    result.train = std::move(split.train);
    result.test = std::move(split.test);
  }
  manifest["stages"]["split"] = {{"train", result.train.size()}, {"test", result.test.size()}};
  return result;
}

}  // namespace lexidot
