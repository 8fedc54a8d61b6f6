#include "lexidot/wikidata.hpp"

#include <deque>
#include <set>
#include <thread>

#include <httplib.h>

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

std::vector<std::string> category_closure(const std::vector<std::string>& direct,
                                          const std::map<std::string, std::vector<std::string>>& subclass_of,
                                          int max_hops) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::deque<std::pair<std::string, int>> queue;
  for (const auto& c : direct)
    if (max_hops >= 1 && seen.insert(c).second) queue.emplace_back(c, 1);
  while (!queue.empty()) {
    auto [cat, hops] = queue.front();
    queue.pop_front();
    out.push_back(cat);
    if (hops >= max_hops) continue;
    if (auto it = subclass_of.find(cat); it != subclass_of.end())
      for (const auto& parent : it->second)
        if (seen.insert(parent).second) queue.emplace_back(parent, hops + 1);
  }
  return out;
}

namespace {

std::vector<std::string> string_list(const Json& rec, std::string_view key, std::size_t line) {
  std::vector<std::string> out;
  auto it = rec.find(key);
  if (it == rec.end()) return out;
  if (!it->is_array()) throw ParseError("field \"" + std::string(key) + "\" must be an array", line);
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError("field \"" + std::string(key) + "\" must hold strings", line);
    out.push_back(v.get<std::string>());
  }
  return out;
}

struct RawEntry {
  WikidataEntry entry;
  std::vector<std::string> instance_of;
  bool explicit_closure = false;
};

RawEntry parse_entry(const Json& e, std::size_t line) {
  if (!e.is_object()) throw ParseError("entries must be objects", line);
  RawEntry raw;
  raw.entry.qid = require_string(e, "qid", line);
  if (raw.entry.qid.empty()) throw ValidationError("line " + std::to_string(line) + ": empty qid");
  raw.entry.label = require_string(e, "label", line);
  raw.explicit_closure = e.contains("categories");
  raw.entry.categories = string_list(e, "categories", line);
  raw.instance_of = string_list(e, "instance_of", line);
  return raw;
}

}  // namespace

FixtureClient FixtureClient::load(std::istream& in) {
  std::map<std::string, std::vector<std::string>> graph;
  std::vector<std::pair<std::string, std::vector<RawEntry>>> words;
  for_each_jsonl(in, [&](std::size_t line, const Json& rec) {
    if (rec.contains("class")) {
      auto& parents = graph[require_string(rec, "class", line)];
      for (auto& p : string_list(rec, "subclass_of", line)) parents.push_back(std::move(p));
      return;
    }
    auto word = require_string(rec, "word", line);
    auto it = rec.find("entries");
    if (it == rec.end() || !it->is_array()) throw ParseError("field \"entries\" must be an array", line);
    std::vector<RawEntry> entries;
    std::set<std::string> qids;
    for (const auto& e : *it) {
      entries.push_back(parse_entry(e, line));
      if (!qids.insert(entries.back().entry.qid).second)
        throw ValidationError("line " + std::to_string(line) + ": duplicate qid " + entries.back().entry.qid);
    }
    words.emplace_back(std::move(word), std::move(entries));
  });

  FixtureClient client;
  for (auto& [word, raws] : words) {
    std::vector<WikidataEntry> entries;
    for (auto& raw : raws) {
      if (!raw.explicit_closure) raw.entry.categories = category_closure(raw.instance_of, graph);
      entries.push_back(std::move(raw.entry));
    }
    client.add(std::move(word), std::move(entries));
  }
  return client;
}

FixtureClient FixtureClient::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load(in);
}

void FixtureClient::add(std::string word, std::vector<WikidataEntry> entries) {
  auto& slot = words_[std::move(word)];
  for (auto& e : entries) slot.push_back(std::move(e));
}

std::vector<WikidataEntry> FixtureClient::lookup(std::string_view word) {
  auto it = words_.find(word);
  return it == words_.end() ? std::vector<WikidataEntry>{} : it->second;
}

LiveClient::LiveClient(std::string endpoint, std::chrono::milliseconds min_interval, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), min_interval_(min_interval), timeout_(timeout) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  if (!endpoint_.starts_with("http://")) throw ArgumentError("Wikidata endpoint must be an http:// URL: " + endpoint_);
}

std::string LiveClient::get(const std::string& path, bool& not_found) {
  std::lock_guard lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  if (last_request_.time_since_epoch().count() != 0 && now - last_request_ < min_interval_)
    std::this_thread::sleep_for(min_interval_ - (now - last_request_));
  last_request_ = std::chrono::steady_clock::now();

  // endpoint_ is "http://host[:port][/prefix]"
  const auto rest = endpoint_.substr(7);
  const auto slash = rest.find('/');
  const std::string host = rest.substr(0, slash);
  const std::string prefix = slash == std::string::npos ? std::string{} : rest.substr(slash);

  httplib::Client cli("http://" + host);
  const auto secs = timeout_.count() / 1000;
  const auto usecs = (timeout_.count() % 1000) * 1000;
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  auto res = cli.Get(prefix + path);
  if (!res) throw TransportError("request to " + endpoint_ + " failed: " + httplib::to_string(res.error()));
  not_found = res->status == 404;
  if (not_found) return {};
  if (res->status != 200)
    throw TransportError("request to " + endpoint_ + path + " returned HTTP " + std::to_string(res->status));
  return res->body;
}

std::vector<std::string> LiveClient::parents(const std::string& category) {
  if (auto it = class_cache_.find(category); it != class_cache_.end()) return it->second;
  bool missing = false;
  const auto body = get("/class?name=" + httplib::detail::encode_query_param(category), missing);
  std::vector<std::string> out;
  if (!missing) {
    try {
      out = string_list(Json::parse(body), "subclass_of", 0);
    } catch (const Json::exception& e) {
      throw TransportError(std::string("malformed class response: ") + e.what());
    }
  }
  class_cache_.emplace(category, out);
  return out;
}

std::vector<WikidataEntry> LiveClient::lookup(std::string_view word) {
  std::lock_guard serial(lookup_mu_);
  bool missing = false;
  const auto body = get("/entities?word=" + httplib::detail::encode_query_param(std::string(word)), missing);
  if (missing) return {};
  std::vector<WikidataEntry> out;
  try {
    const auto rec = Json::parse(body);
    auto it = rec.find("entries");
    if (it == rec.end() || !it->is_array()) throw TransportError("entity response without entries");
    for (const auto& e : *it) {
      auto raw = parse_entry(e, 0);
      if (!raw.explicit_closure) {
        // expand lazily, one hop at a time
        std::map<std::string, std::vector<std::string>> graph;
        std::deque<std::pair<std::string, int>> frontier;
        for (const auto& c : raw.instance_of) frontier.emplace_back(c, 1);
        while (!frontier.empty()) {
          auto [cat, hops] = frontier.front();
          frontier.pop_front();
          if (hops >= kMaxClosureHops || graph.contains(cat)) continue;
          graph[cat] = parents(cat);
          for (const auto& p : graph[cat]) frontier.emplace_back(p, hops + 1);
        }
        raw.entry.categories = category_closure(raw.instance_of, graph);
      }
      out.push_back(std::move(raw.entry));
    }
  } catch (const Json::exception& e) {
    throw TransportError(std::string("malformed entity response: ") + e.what());
  } catch (const ParseError& e) {
    throw TransportError(std::string("malformed entity response: ") + e.what());
  }
  return out;
}

}  // namespace lexidot
