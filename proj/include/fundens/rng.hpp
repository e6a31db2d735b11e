#pragma once

#include <cstdint>
#include <random>

namespace fundens {

/// Seedable deterministic pseudo-random stream. The raw engine is
/// mt19937_64, whose sequence is fixed by the standard; all variate
/// transforms are implemented here rather than with std distributions,
/// so a seed pins the sample sequence exactly.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1).
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1).
  double u01_open() {
    double u;
    do u = u01();
    while (u == 0.0);
    return u;
  }

  /// Standard normal via the polar method.
  double gaussian();

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fundens
