#include "grenander/reference_density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "grenander/errors.hpp"
#include "grenander/rng.hpp"

namespace grenander {

namespace {
constexpr double kMassTol = 1e-12;
}

ReferenceDensity ReferenceDensity::uniform(double alpha1) {
  if (!(alpha1 > 0.0) || !std::isfinite(alpha1)) {
    throw ConfigError("uniform: alpha1 must be positive and finite");
  }
  ReferenceDensity d;
  d.family_ = Family::Uniform;
  d.alpha1_ = alpha1;
  d.zeta_ = d.k_ = 1.0 / alpha1;
  d.jumps_ = {{alpha1, 1.0 / alpha1}};
  d.breakpoints_ = {0.0, alpha1};
  return d;
}

ReferenceDensity ReferenceDensity::linear(double a, double b, double alpha1) {
  if (!(alpha1 > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("linear: bad parameters");
  }
  if (b < 0.0) {
    throw ConfigError("linear: slope parameter b must be >= 0");
  }
  const double zeta = a - b * alpha1;
  if (!(zeta > 0.0)) {
    throw ConfigError("linear: density must stay positive on the support");
  }
  const double mass = a * alpha1 - 0.5 * b * alpha1 * alpha1;
  if (std::fabs(mass - 1.0) > kMassTol) {
    throw ConfigError("linear: a*alpha1 - b*alpha1^2/2 must equal 1");
  }
  ReferenceDensity d;
  d.family_ = Family::Linear;
  d.alpha1_ = alpha1;
  d.a_ = a;
  d.b_ = b;
  d.zeta_ = zeta;
  d.k_ = a;
  d.jumps_ = {{alpha1, zeta}};
  if (b > 0.0) d.lambda_over_dp0_ = 1.0 / b;
  d.breakpoints_ = {0.0, alpha1};
  return d;
}

ReferenceDensity ReferenceDensity::step_jump(std::vector<double> edges,
                                             std::vector<double> heights) {
  if (edges.size() != heights.size() + 1 || heights.empty()) {
    throw ConfigError("stepJump: need m+1 edges for m pieces");
  }
  if (edges.front() != 0.0) {
    throw ConfigError("stepJump: support must start at 0");
  }
  double mass = 0.0;
  for (std::size_t j = 0; j < heights.size(); ++j) {
    if (!(edges[j] < edges[j + 1])) {
      throw ConfigError("stepJump: edges must strictly increase");
    }
    if (!(heights[j] > 0.0)) {
      throw ConfigError("stepJump: heights must be positive");
    }
    if (j > 0 && heights[j] > heights[j - 1]) {
      throw ConfigError("stepJump: heights must be non-increasing");
    }
    mass += heights[j] * (edges[j + 1] - edges[j]);
  }
  if (std::fabs(mass - 1.0) > kMassTol) {
    throw ConfigError("stepJump: piece areas must sum to 1");
  }
  ReferenceDensity d;
  d.family_ = Family::StepJump;
  d.alpha1_ = edges.back();
  d.zeta_ = heights.back();
  d.k_ = heights.front();
  d.step_cum_.assign(edges.size(), 0.0);
  for (std::size_t j = 0; j < heights.size(); ++j) {
    d.step_cum_[j + 1] =
        d.step_cum_[j] + heights[j] * (edges[j + 1] - edges[j]);
  }
  for (std::size_t j = 1; j < heights.size(); ++j) {
    const double delta = heights[j - 1] - heights[j];
    if (delta > 0.0) d.jumps_.push_back({edges[j], delta});
  }
  d.jumps_.push_back({edges.back(), heights.back()});
  d.breakpoints_ = edges;
  d.step_edges_ = std::move(edges);
  d.step_heights_ = std::move(heights);
  return d;
}

ReferenceDensity ReferenceDensity::trunc_exp(double rate, double alpha1) {
  if (!(rate > 0.0) || !(alpha1 > 0.0)) {
    throw ConfigError("truncExp: rate and alpha1 must be positive");
  }
  ReferenceDensity d;
  d.family_ = Family::TruncExp;
  d.alpha1_ = alpha1;
  d.rate_ = rate;
  d.exp_scale_ = rate / (1.0 - std::exp(-rate * alpha1));
  d.k_ = d.exp_scale_;
  d.zeta_ = d.exp_scale_ * std::exp(-rate * alpha1);
  d.jumps_ = {{alpha1, d.zeta_}};
  // |p'(x)| = rate * p(x) >= rate * zeta on the support
  d.lambda_over_dp0_ = 1.0 / (rate * d.zeta_);
  d.breakpoints_ = {0.0, alpha1};
  return d;
}

double ReferenceDensity::pdf(double x) const {
  if (x < 0.0 || x > alpha1_) return 0.0;
  switch (family_) {
    case Family::Uniform:
      return 1.0 / alpha1_;
    case Family::Linear:
      return a_ - b_ * x;
    case Family::TruncExp:
      return exp_scale_ * std::exp(-rate_ * x);
    case Family::StepJump: {
      if (x == 0.0) return step_heights_.front();
      auto it =
          std::lower_bound(step_edges_.begin() + 1, step_edges_.end(), x);
      return step_heights_[static_cast<std::size_t>(it - step_edges_.begin()) -
                           1];
    }
  }
  return 0.0;
}

double ReferenceDensity::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= alpha1_) return 1.0;
  switch (family_) {
    case Family::Uniform:
      return x / alpha1_;
    case Family::Linear:
      return a_ * x - 0.5 * b_ * x * x;
    case Family::TruncExp:
      return exp_scale_ * (1.0 - std::exp(-rate_ * x)) / rate_;
    case Family::StepJump: {
      auto it =
          std::lower_bound(step_edges_.begin() + 1, step_edges_.end(), x);
      const auto j = static_cast<std::size_t>(it - step_edges_.begin()) - 1;
      return step_cum_[j] + step_heights_[j] * (x - step_edges_[j]);
    }
  }
  return 0.0;
}

double ReferenceDensity::quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw InputError("quantile: u must lie in the open interval (0,1)");
  }
  switch (family_) {
    case Family::Uniform:
      return u * alpha1_;
    case Family::Linear: {
      if (b_ == 0.0) return u / a_;
      // root of a*x - b*x^2/2 = u inside the support
      return (a_ - std::sqrt(a_ * a_ - 2.0 * b_ * u)) / b_;
    }
    case Family::TruncExp:
      return -std::log1p(-u * rate_ / exp_scale_) / rate_;
    case Family::StepJump: {
      auto it = std::upper_bound(step_cum_.begin(), step_cum_.end(), u);
      auto j = static_cast<std::size_t>(it - step_cum_.begin());
      if (j == 0) j = 1;
      if (j > step_heights_.size()) j = step_heights_.size();
      return step_edges_[j - 1] + (u - step_cum_[j - 1]) / step_heights_[j - 1];
    }
  }
  return 0.0;
}

Sample ReferenceDensity::sample_iid(int n, std::uint64_t seed) const {
  if (n < 1) throw InputError("sample_iid: n must be >= 1");
  rng::CounterRng gen(seed);
  std::vector<double> draws(static_cast<std::size_t>(n));
  for (auto& x : draws) x = quantile(gen.next_unit());
  return make_sample(draws);
}

std::optional<ReferenceDensity::JumpPoint> ReferenceDensity::jump_at(
    double t) const {
  for (const auto& j : jumps_) {
    if (j.t == t) return j;
  }
  return std::nullopt;
}

std::string ReferenceDensity::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Uniform:
      os << "uniform(alpha1=" << alpha1_ << ")";
      break;
    case Family::Linear:
      os << "linear(a=" << a_ << ", b=" << b_ << ", alpha1=" << alpha1_ << ")";
      break;
    case Family::TruncExp:
      os << "truncExp(rate=" << rate_ << ", alpha1=" << alpha1_ << ")";
      break;
    case Family::StepJump:
      os << "stepJump(" << step_heights_.size() << " pieces on [0, " << alpha1_
         << "])";
      break;
  }
  return os.str();
}

}  // namespace grenander
