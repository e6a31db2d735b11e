#include "fundens/rng.hpp"

#include <cmath>

namespace fundens {

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double x, y, s;
  do {
    x = 2.0 * u01() - 1.0;
    y = 2.0 * u01() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * f;
  have_spare_ = true;
  return x * f;
}

}  // namespace fundens
