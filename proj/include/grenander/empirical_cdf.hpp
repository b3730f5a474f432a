#pragma once

#include <cstddef>
#include <vector>

#include "grenander/sample.hpp"

namespace grenander {

// Right-continuous empirical distribution function. Jump points are the
// distinct observation values; heights are cumulative counts over n, so the
// final height is exactly 1 and a value appearing k times jumps by k/n.
class EmpiricalCdf {
 public:
  const std::vector<double>& jump_points() const { return jump_points_; }
  const std::vector<double>& heights() const { return heights_; }
  std::size_t sample_size() const { return n_; }

  // F_n(x), right-continuous.
  double operator()(double x) const;
  // F_n(x-), the left limit.
  double left_limit(double x) const;

 private:
  friend EmpiricalCdf empirical_cdf(const Sample& s);
  EmpiricalCdf(std::vector<double> jumps, std::vector<double> heights,
               std::size_t n)
      : jump_points_(std::move(jumps)), heights_(std::move(heights)), n_(n) {}

  std::vector<double> jump_points_;
  std::vector<double> heights_;
  std::size_t n_ = 0;
};

EmpiricalCdf empirical_cdf(const Sample& s);

}  // namespace grenander
