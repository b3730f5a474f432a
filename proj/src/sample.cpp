#include "grenander/sample.hpp"

#include <algorithm>
#include <cmath>

#include "grenander/errors.hpp"

namespace grenander {

Sample make_sample(const std::vector<double>& raw) {
  if (raw.empty()) {
    throw InputError("make_sample: empty input");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw InputError("make_sample: non-finite value at index " +
                       std::to_string(i));
    }
    if (raw[i] < 0.0) {
      throw InputError("make_sample: negative value at index " +
                       std::to_string(i));
    }
  }
  std::vector<double> sorted = raw;
  std::sort(sorted.begin(), sorted.end());
  return Sample(std::move(sorted));
}

}  // namespace grenander
