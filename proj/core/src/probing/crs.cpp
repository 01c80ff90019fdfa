#include "probematch/probing/crs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "probematch/errors.hpp"

namespace probematch::probing {

double ocrs_accept_prob(double prefix) {
  if (prefix > 1.0 + 1e-9) {
    throw InfeasibleFractionalPoint("prefix z-sum " + std::to_string(prefix) + " exceeds 1");
  }
  return 1.0 / (2.0 - std::min(prefix, 1.0));
}

double rcrs_accept_prob(double y, double z) { return std::exp(-y * z); }

std::vector<double> ocrs_exact_selectability(std::span<const double> z,
                                             std::span<const std::size_t> order) {
  const std::size_t k = z.size();
  if (k > 20) throw SizeLimitError("exact selectability enumeration", std::ldexp(1.0, static_cast<int>(k)));
  if (order.size() != k) throw Error("order length differs from element count");
  std::vector<double> q(k);
  double prefix = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    q[t] = ocrs_accept_prob(prefix);
    prefix += z[order[t]];
  }
  ocrs_accept_prob(prefix);

  std::vector<double> out(k, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    // Sum over activation patterns of the elements arriving before t; the
    // element is selected iff it finds nothing selected and passes its coin.
    double free_prob = 0.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << t); ++mask) {
      double pattern = 1.0;
      double none_selected = 1.0;
      for (std::size_t j = 0; j < t; ++j) {
        const double zj = z[order[j]];
        if (mask >> j & 1U) {
          pattern *= zj;
          none_selected *= 1.0 - q[j];
        } else {
          pattern *= 1.0 - zj;
        }
      }
      free_prob += pattern * none_selected;
    }
    out[order[t]] = q[t] * free_prob;
  }
  return out;
}

}  // namespace probematch::probing
