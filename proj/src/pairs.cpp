#include "lexidot/pairs.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "lexidot/error.hpp"
#include "lexidot/hash.hpp"
#include "lexidot/io.hpp"
#include "lexidot/utf8.hpp"

namespace lexidot {

std::string_view to_string(Task t) noexcept { return t == Task::Wsd ? "WSD" : "RP"; }
std::string_view to_string(WsdMode m) noexcept { return m == WsdMode::PosGuided ? "pos-guided" : "all-senses"; }
std::string_view to_string(RpMode m) noexcept { return m == RpMode::Dotted ? "dotted" : "all-types"; }

std::string_view to_string(BuildStatus s) noexcept {
  switch (s) {
    case BuildStatus::Ok: return "ok";
    case BuildStatus::FellBack: return "fell-back";
    case BuildStatus::Discarded: return "discarded";
  }
  return "ok";
}

void validate(const TestInstance& inst) {
  const auto cps = utf8::decode(inst.sentence);
  if (inst.start >= inst.end || inst.end > cps.size())
    throw SpanError("instance " + inst.id + ": span [" + std::to_string(inst.start) + ", " + std::to_string(inst.end) +
                    ") invalid for a sentence of " + std::to_string(cps.size()) + " characters");
  const auto surface = utf8::encode(std::u32string_view(cps).substr(inst.start, inst.end - inst.start));
  if (surface != inst.lemma)
    throw SpanError("instance " + inst.id + ": span covers \"" + surface + "\", not \"" + inst.lemma + "\"");
}

std::vector<TestInstance> load_instances(std::istream& in) {
  std::vector<TestInstance> out;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    TestInstance inst;
    if (auto it = rec.find("instance_id"); it != rec.end()) {
      if (it->is_string()) inst.id = it->get<std::string>();
      else if (it->is_number_integer()) inst.id = std::to_string(it->get<std::int64_t>());
      else throw ParseError("field \"instance_id\" must be a string or integer", line);
    } else {
      inst.id = std::to_string(out.size());
    }
    inst.sentence = require_string(rec, "sentence", line);
    const auto start = require_int(rec, "start", line);
    const auto end = require_int(rec, "end", line);
    if (start < 0 || end < 0) throw SpanError("line " + std::to_string(line) + ": negative offset");
    inst.start = static_cast<std::size_t>(start);
    inst.end = static_cast<std::size_t>(end);
    inst.lemma = require_string(rec, "lemma", line);
    inst.pos_raw = rec.contains("pos_raw") ? require_string(rec, "pos_raw", line) : std::string{};
    if (auto it = rec.find("gold"); it != rec.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("field \"gold\" must be a string or null", line);
      inst.gold = it->get<std::string>();
    }
    const auto task = require_string(rec, "task", line);
    if (task == "WSD") inst.task = Task::Wsd;
    else if (task == "RP") inst.task = Task::Rp;
    else throw ParseError("task must be \"WSD\" or \"RP\"", line);
    try {
      validate(inst);
    } catch (const SpanError& e) {
      throw SpanError("line " + std::to_string(line) + ": " + e.what());
    }
    out.push_back(std::move(inst));
  });
  return out;
}

std::vector<TestInstance> load_instances(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_instances(in);
}

void save_instances(std::ostream& out, std::span<const TestInstance> instances) {
  for (const auto& inst : instances) {
    Json rec = {{"instance_id", inst.id}, {"sentence", inst.sentence}, {"start", inst.start}, {"end", inst.end},
                {"lemma", inst.lemma},    {"pos_raw", inst.pos_raw},   {"gold", nullptr},      {"task", to_string(inst.task)}};
    if (inst.gold) rec["gold"] = *inst.gold;
    out << rec.dump() << '\n';
  }
}

std::string mark_target(std::string_view sentence, std::size_t start, std::size_t end, const PairFormat& fmt) {
  const auto cps = utf8::decode(sentence);
  if (start >= end || end > cps.size())
    throw SpanError("span [" + std::to_string(start) + ", " + std::to_string(end) + ") out of range");
  std::u32string marked;
  marked.reserve(cps.size() + 2);
  marked.append(cps, 0, start);
  marked.push_back(fmt.open_marker);
  marked.append(cps, start, end - start);
  marked.push_back(fmt.close_marker);
  marked.append(cps, end);
  return utf8::encode(marked);
}

std::optional<std::size_t> PairSet::gold_index() const noexcept {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].label) return i;
  return std::nullopt;
}

std::size_t example_index(std::string_view sense_id, std::uint64_t seed, std::size_t n_examples) noexcept {
  if (n_examples == 0) return 0;
  return static_cast<std::size_t>(seeded_hash(seed, sense_id) % n_examples);
}

PairSet build_wsd_pairs(const TestInstance& inst, const SenseInventory& inv, WsdMode mode, std::uint64_t seed,
                        const PairFormat& fmt, const PosMap& pos_map) {
  if (inst.task != Task::Wsd) throw ArgumentError("instance " + inst.id + " is not a WSD instance");
  PairSet set;
  auto candidates = candidates_for(inst.lemma, std::nullopt, inv);
  if (candidates.size() < 2) {
    set.status = BuildStatus::Discarded;
    return set;
  }
  if (mode == WsdMode::PosGuided) {
    auto filtered = candidates_for(inst.lemma, pos_map(inst.pos_raw), inv);
    if (filtered.size() >= 2) candidates = std::move(filtered);
    else set.status = BuildStatus::FellBack;
  }

  const auto context = mark_target(inst.sentence, inst.start, inst.end, fmt);
  set.pairs.reserve(candidates.size());
  for (const Sense* s : candidates) {
    std::string gloss = inst.lemma + fmt.target_separator + s->gloss;
    if (!s->examples.empty()) {
      gloss += fmt.field_separator;
      gloss += s->examples[example_index(s->sense_id, seed, s->examples.size())];
    }
    const bool label = inst.gold && *inst.gold == s->sense_id;
    set.pairs.push_back({inst.id, context, std::move(gloss), s->sense_id, label});
  }
  return set;
}

PairSet build_rp_pairs(const TestInstance& inst, const DotRegistry& reg, RpMode mode, const PairFormat& fmt) {
  if (inst.task != Task::Rp) throw ArgumentError("instance " + inst.id + " is not an RP instance");
  std::vector<TypeClass> classes = dot_candidates(inst.lemma, reg);
  if (mode == RpMode::AllTypes) classes.assign(kTypeClasses.begin(), kTypeClasses.end());

  PairSet set;
  const auto context = mark_target(inst.sentence, inst.start, inst.end, fmt);
  for (auto c : classes) {
    const auto& g = reg.gloss(c);
    std::string gloss = inst.lemma + fmt.target_separator + g.label_zh + fmt.field_separator + g.gloss_zh;
    std::string id(to_string(c));
    const bool label = inst.gold && *inst.gold == id;
    set.pairs.push_back({inst.id, context, std::move(gloss), std::move(id), label});
  }
  return set;
}

namespace {

PairSet build_one(const TestInstance& inst, const SenseInventory* inv, const DotRegistry* reg,
                  const BuildOptions& opts) {
  if (inst.task == Task::Wsd) {
    if (!inv) throw LookupError("instance " + inst.id + " needs a sense inventory");
    return build_wsd_pairs(inst, *inv, opts.wsd_mode, opts.seed, opts.format, opts.pos_map);
  }
  if (!reg) throw LookupError("instance " + inst.id + " needs a dot registry");
  return build_rp_pairs(inst, *reg, opts.rp_mode, opts.format);
}

}  // namespace

FlattenResult flatten(std::span<const TestInstance> instances, const SenseInventory* inv, const DotRegistry* reg,
                      const BuildOptions& opts) {
  FlattenResult result;
  result.sets.resize(instances.size());

  const std::size_t workers = std::clamp<std::size_t>(opts.workers, 1, std::max<std::size_t>(1, instances.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) result.sets[i] = build_one(instances[i], inv, reg, opts);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (instances.size() + workers - 1) / workers;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            const std::size_t hi = std::min(instances.size(), (w + 1) * chunk);
            for (std::size_t i = w * chunk; i < hi; ++i) result.sets[i] = build_one(instances[i], inv, reg, opts);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const auto& set : result.sets) {
    if (set.discarded()) {
      ++result.discarded;
      continue;
    }
    if (set.status == BuildStatus::FellBack) ++result.fallbacks;
    ++result.examples;
    result.sequences += set.pairs.size();
  }
  return result;
}

void write_pairs(std::ostream& out, const FlattenResult& result) {
  for (const auto& set : result.sets)
    for (const auto& p : set.pairs)
      out << Json{{"instance_id", p.instance_id}, {"context", p.context}, {"gloss", p.gloss},
                  {"candidate_id", p.candidate_id}, {"label", p.label}}.dump()
          << '\n';
}

std::vector<ContextGlossPair> load_pairs(std::istream& in) {
  std::vector<ContextGlossPair> out;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    ContextGlossPair p;
    p.instance_id = require_string(rec, "instance_id", line);
    p.context = require_string(rec, "context", line);
    p.gloss = require_string(rec, "gloss", line);
    p.candidate_id = require_string(rec, "candidate_id", line);
    auto it = rec.find("label");
    if (it == rec.end() || !it->is_boolean()) throw ParseError("field \"label\" must be a boolean", line);
    p.label = it->get<bool>();
    out.push_back(std::move(p));
  });
  return out;
}

}  // namespace lexidot
