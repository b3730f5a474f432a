#include "grenander/empirical_cdf.hpp"

#include <algorithm>

namespace grenander {

EmpiricalCdf empirical_cdf(const Sample& s) {
  const auto& v = s.values();
  const auto n = static_cast<double>(s.size());
  std::vector<double> jumps;
  std::vector<double> heights;
  jumps.reserve(v.size());
  heights.reserve(v.size());
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    jumps.push_back(v[i]);
    heights.push_back(static_cast<double>(j) / n);  // cumulative k/n
    i = j;
  }
  return EmpiricalCdf(std::move(jumps), std::move(heights), s.size());
}

double EmpiricalCdf::operator()(double x) const {
  auto it = std::upper_bound(jump_points_.begin(), jump_points_.end(), x);
  if (it == jump_points_.begin()) return 0.0;
  return heights_[static_cast<std::size_t>(it - jump_points_.begin()) - 1];
}

double EmpiricalCdf::left_limit(double x) const {
  auto it = std::lower_bound(jump_points_.begin(), jump_points_.end(), x);
  if (it == jump_points_.begin()) return 0.0;
  return heights_[static_cast<std::size_t>(it - jump_points_.begin()) - 1];
}

}  // namespace grenander
