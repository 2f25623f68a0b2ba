#include "scg/random.hpp"

#include <cmath>

namespace scg {

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  // Knuth's product method per chunk; a sum of independent Poisson(m_i) is
  // Poisson(Σ m_i), so large means split into chunks of at most 16.
  constexpr double chunk = 16.0;
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double m = remaining > chunk ? chunk : remaining;
    remaining -= m;
    const double limit = std::exp(-m);
    double prod = uniform();
    while (prod > limit) {
      ++total;
      prod *= uniform();
    }
  }
  return total;
}

}  // namespace scg
