#pragma once

#include <cstddef>
#include <vector>

namespace grenander {

// Sorted non-negative observations. Construct through make_sample, which
// validates and sorts; afterwards the data is immutable.
class Sample {
 public:
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  friend Sample make_sample(const std::vector<double>& raw);
  explicit Sample(std::vector<double> sorted) : values_(std::move(sorted)) {}
  std::vector<double> values_;
};

// Sorts a copy of `raw`. Rejects empty input and any negative or non-finite
// value, reporting the offending index in the original order.
Sample make_sample(const std::vector<double>& raw);

}  // namespace grenander
