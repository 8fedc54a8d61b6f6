#include "lexidot/io.hpp"

#include <fstream>
#include <random>

#include "lexidot/error.hpp"
#include "lexidot/utf8.hpp"

namespace lexidot {

void for_each_jsonl(std::istream& in, const std::function<void(std::size_t, const Json&)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!utf8::is_valid(line)) throw ParseError("invalid UTF-8", line_no);
    Json rec;
    try {
      rec = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!rec.is_object()) throw ParseError("expected a JSON object", line_no);
    fn(line_no, rec);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string require_string(const Json& rec, std::string_view key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end()) throw ParseError("missing field \"" + std::string(key) + "\"", line);
  if (!it->is_string()) throw ParseError("field \"" + std::string(key) + "\" must be a string", line);
  return it->get<std::string>();
}

std::int64_t require_int(const Json& rec, std::string_view key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end()) throw ParseError("missing field \"" + std::string(key) + "\"", line);
  if (!it->is_number_integer()) throw ParseError("field \"" + std::string(key) + "\" must be an integer", line);
  return it->get<std::int64_t>();
}

}  // namespace lexidot
