#include "splinepdf/rng.hpp"

#include <cmath>
#include <numbers>

namespace splinepdf {

double PortableRng::normal()
{
  // 1 - uniform() lies in (0, 1], keeping the log finite
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace splinepdf
