#pragma once

#include <chrono>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace lexidot {

struct WikidataEntry {
  std::string qid;
  std::string label;
  /// Category closure over instance_of / subclass_of, breadth-first from the
  /// entry's direct instance_of classes.
  std::vector<std::string> categories;

  friend bool operator==(const WikidataEntry&, const WikidataEntry&) = default;
};

inline constexpr int kMaxClosureHops = 5;

/// Breadth-first closure: `direct` classes are hop 1, each subclass_of edge
/// adds a hop, nothing beyond `max_hops` is visited. Duplicates are dropped.
std::vector<std::string> category_closure(const std::vector<std::string>& direct,
                                          const std::map<std::string, std::vector<std::string>>& subclass_of,
                                          int max_hops = kMaxClosureHops);

/// Source of Wikidata entries for a surface word. An empty result means "no
/// entry"; transport failures throw TransportError instead.
class WikidataClient {
 public:
  virtual ~WikidataClient() = default;
  virtual std::vector<WikidataEntry> lookup(std::string_view word) = 0;
};

/// Offline client backed by a JSONL file with two record shapes:
///   {"word", "entries": [{"qid", "label", "categories": [..]} | {"qid", "label", "instance_of": [..]}]}
///   {"class", "subclass_of": [..]}
/// Entries that give only instance_of get their closure from the class
/// records. Read-only after load.
class FixtureClient final : public WikidataClient {
 public:
  static FixtureClient load(std::istream& in);
  static FixtureClient load(const std::filesystem::path& path);

  void add(std::string word, std::vector<WikidataEntry> entries);
  std::vector<WikidataEntry> lookup(std::string_view word) override;

 private:
  std::map<std::string, std::vector<WikidataEntry>, std::less<>> words_;
};

/// HTTP client for a lookup service exposing
///   GET <endpoint>/entities?word=W  -> {"word", "entries": [...]}   (404: no entry)
///   GET <endpoint>/class?name=C     -> {"class", "subclass_of": [...]}
/// Entry objects use the fixture schema. Requests are serialised and spaced
/// at least `min_interval` apart.
class LiveClient final : public WikidataClient {
 public:
  explicit LiveClient(std::string endpoint, std::chrono::milliseconds min_interval = std::chrono::milliseconds(100),
                      std::chrono::milliseconds timeout = std::chrono::seconds(10));

  std::vector<WikidataEntry> lookup(std::string_view word) override;

 private:
  std::string get(const std::string& path, bool& not_found);
  std::vector<std::string> parents(const std::string& category);

  std::string endpoint_;
  std::chrono::milliseconds min_interval_;
  std::chrono::milliseconds timeout_;
  std::mutex lookup_mu_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_request_{};
  std::map<std::string, std::vector<std::string>> class_cache_;
};

}  // namespace lexidot
