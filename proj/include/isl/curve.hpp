#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isl {

// Ordered pass@k observations: trial counts with the measured coverage at
// each. `k` must be strictly increasing and coverage must stay in [0, 1].
struct CoverageCurve {
  std::vector<std::int64_t> k;
  std::vector<double> coverage;
  std::string label;

  std::size_t size() const { return k.size(); }
  double max_coverage() const;

  // Throws std::invalid_argument when the invariants above are violated.
  void validate() const;
};

}  // namespace isl
