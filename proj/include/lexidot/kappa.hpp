#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace lexidot {

/// items x categories table of rater counts; every row sums to the same
/// number of raters.
class AgreementMatrix {
 public:
  /// Throws ValidationError unless there is at least one item, two
  /// categories, two raters, no negative count and constant row sums.
  explicit AgreementMatrix(std::vector<std::vector<long>> rows, std::vector<std::string> categories = {});

  /// CSV with one row per item and one integer column per category. A first
  /// row that is not all-numeric is taken as the category header.
  static AgreementMatrix load_csv(std::istream& in);
  static AgreementMatrix load_csv(const std::filesystem::path& path);

  std::size_t items() const noexcept { return rows_.size(); }
  std::size_t categories() const noexcept { return rows_.front().size(); }
  long raters() const noexcept { return raters_; }
  long operator()(std::size_t item, std::size_t category) const noexcept { return rows_[item][category]; }
  const std::vector<std::string>& category_names() const noexcept { return names_; }

 private:
  std::vector<std::vector<long>> rows_;
  std::vector<std::string> names_;
  long raters_ = 0;
};

/// Fleiss' kappa. When every rating falls in one category the chance
/// agreement is 1 and the statistic is defined as 1.
double fleiss_kappa(const AgreementMatrix& m);

/// Mean per-item proportion of agreeing rater pairs.
double raw_agreement(const AgreementMatrix& m);

}  // namespace lexidot
