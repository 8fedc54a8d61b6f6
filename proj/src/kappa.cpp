#include "lexidot/kappa.hpp"

#include <charconv>
#include <sstream>

#include "lexidot/error.hpp"
#include "lexidot/io.hpp"

namespace lexidot {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_long(const std::string& s, long& v) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && p == s.data() + s.size() && !s.empty();
}

}  // namespace

AgreementMatrix::AgreementMatrix(std::vector<std::vector<long>> rows, std::vector<std::string> categories)
    : rows_(std::move(rows)), names_(std::move(categories)) {
  if (rows_.empty()) throw ValidationError("agreement matrix has no items");
  const std::size_t k = rows_.front().size();
  if (k < 2) throw ValidationError("agreement matrix needs at least two categories");
  if (!names_.empty() && names_.size() != k) throw ValidationError("header width does not match the rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != k) throw ValidationError("item " + std::to_string(i) + " has a different number of categories");
    long sum = 0;
    for (long c : rows_[i]) {
      if (c < 0) throw ValidationError("item " + std::to_string(i) + " has a negative count");
      sum += c;
    }
    if (i == 0) raters_ = sum;
    else if (sum != raters_)
      throw ValidationError("item " + std::to_string(i) + " sums to " + std::to_string(sum) + " raters, expected " +
                            std::to_string(raters_));
  }
  if (raters_ < 2) throw ValidationError("agreement matrix needs at least two raters");
}

AgreementMatrix AgreementMatrix::load_csv(std::istream& in) {
  std::vector<std::vector<long>> rows;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    std::vector<long> row;
    bool numeric = true;
    for (const auto& c : cells) {
      long v;
      if (!parse_long(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && header.empty()) {
        header = std::move(cells);
        continue;
      }
      throw ParseError("expected integer counts", line_no);
    }
    rows.push_back(std::move(row));
  }
  return AgreementMatrix(std::move(rows), std::move(header));
}

AgreementMatrix AgreementMatrix::load_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_csv(in);
}

double raw_agreement(const AgreementMatrix& m) {
  const double n = static_cast<double>(m.raters());
  double total = 0.0;
  for (std::size_t i = 0; i < m.items(); ++i) {
    double sq = 0.0;
    for (std::size_t j = 0; j < m.categories(); ++j) sq += static_cast<double>(m(i, j)) * static_cast<double>(m(i, j));
    total += (sq - n) / (n * (n - 1.0));
  }
  return total / static_cast<double>(m.items());
}

double fleiss_kappa(const AgreementMatrix& m) {
  const double items = static_cast<double>(m.items());
  const double n = static_cast<double>(m.raters());
  double p_e = 0.0;
  for (std::size_t j = 0; j < m.categories(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.items(); ++i) col += static_cast<double>(m(i, j));
    const double p = col / (items * n);
    p_e += p * p;
  }
  const double p_bar = raw_agreement(m);
  if (1.0 - p_e <= 0.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

}  // namespace lexidot
