#include "isl/curve.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace isl {

double CoverageCurve::max_coverage() const {
  if (coverage.empty()) return 0.0;
  return *std::max_element(coverage.begin(), coverage.end());
}

void CoverageCurve::validate() const {
  if (k.size() != coverage.size()) {
    throw std::invalid_argument("coverage curve: k and coverage lengths differ");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 1) {
      throw std::invalid_argument("coverage curve: k must be >= 1, got " +
                                  std::to_string(k[i]));
    }
    if (i > 0 && k[i] <= k[i - 1]) {
      throw std::invalid_argument("coverage curve: k must be strictly increasing");
    }
    if (!(coverage[i] >= 0.0) || !(coverage[i] <= 1.0)) {
      throw std::invalid_argument("coverage curve: coverage must lie in [0, 1]");
    }
  }
}

}  // namespace isl
