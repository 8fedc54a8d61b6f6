#include "lexidot/inventory.hpp"

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

namespace {

Sense parse_sense(const Json& rec, std::size_t line, const PosMap& pos_map) {
  Sense s;
  s.sense_id = require_string(rec, "sense_id", line);
  s.lemma = require_string(rec, "lemma", line);
  s.pos_raw = require_string(rec, "pos_raw", line);
  s.gloss = require_string(rec, "gloss", line);
  s.pos = pos_map(s.pos_raw);
  if (auto it = rec.find("examples"); it != rec.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("field \"examples\" must be an array", line);
    for (const auto& ex : *it) {
      if (!ex.is_string()) throw ParseError("examples must be strings", line);
      s.examples.push_back(ex.get<std::string>());
    }
  }
  return s;
}

}  // namespace

SenseInventory SenseInventory::load(std::istream& in, const PosMap& pos_map) {
  SenseInventory inv;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    if (auto it = rec.find("gloss"); it == rec.end() || (it->is_string() && it->get_ref<const std::string&>().empty()))
      throw ValidationError("line " + std::to_string(line) + ": sense has no gloss");
    Sense s = parse_sense(rec, line, pos_map);
    try {
      inv.add(std::move(s), pos_map);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  });
  return inv;
}

SenseInventory SenseInventory::load(const std::filesystem::path& path, const PosMap& pos_map) {
  auto in = open_input(path);
  return load(in, pos_map);
}

void SenseInventory::add(Sense sense, const PosMap& pos_map) {
  if (sense.sense_id.empty()) throw ValidationError("empty sense_id");
  if (sense.lemma.empty()) throw ValidationError("sense " + sense.sense_id + " has an empty lemma");
  if (sense.gloss.empty()) throw ValidationError("sense " + sense.sense_id + " has an empty gloss");
  if (sense.pos != pos_map(sense.pos_raw))
    throw ValidationError("sense " + sense.sense_id + ": POS category does not match tag " + sense.pos_raw);
  if (by_id_.contains(sense.sense_id)) throw ValidationError("duplicate sense_id " + sense.sense_id);
  const std::size_t idx = senses_.size();
  by_id_.emplace(sense.sense_id, idx);
  by_lemma_[sense.lemma].push_back(idx);
  senses_.push_back(std::move(sense));
}

void SenseInventory::save(std::ostream& out) const {
  for (const auto& s : senses_) {
    Json rec = {{"sense_id", s.sense_id}, {"lemma", s.lemma}, {"pos_raw", s.pos_raw},
                {"gloss", s.gloss},       {"examples", s.examples}};
    out << rec.dump() << '\n';
  }
}

bool SenseInventory::contains(std::string_view lemma) const noexcept {
  return by_lemma_.contains(std::string(lemma));
}

const std::vector<std::size_t>& SenseInventory::indices(std::string_view lemma) const {
  auto it = by_lemma_.find(std::string(lemma));
  if (it == by_lemma_.end()) throw LookupError("lemma not in inventory: " + std::string(lemma));
  return it->second;
}

std::size_t SenseInventory::sense_count(std::string_view lemma) const { return indices(lemma).size(); }

std::vector<const Sense*> SenseInventory::senses_of(std::string_view lemma) const {
  std::vector<const Sense*> out;
  for (auto i : indices(lemma)) out.push_back(&senses_[i]);
  return out;
}

const Sense* SenseInventory::find(std::string_view sense_id) const noexcept {
  auto it = by_id_.find(std::string(sense_id));
  return it == by_id_.end() ? nullptr : &senses_[it->second];
}

std::vector<const Sense*> candidates_for(std::string_view lemma, std::optional<PosCategory> filter,
                                         const SenseInventory& inv) {
  auto all = inv.senses_of(lemma);
  if (!filter) return all;
  std::erase_if(all, [&](const Sense* s) { return s->pos != *filter; });
  return all;
}

}  // namespace lexidot
