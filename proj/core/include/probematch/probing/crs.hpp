#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace probematch::probing {

/// Online contention resolution for a single item: q_t = 1 / (2 - prefix),
/// where prefix is the z-mass of earlier arrivals. Throws
/// InfeasibleFractionalPoint when prefix exceeds 1 + 1e-9.
double ocrs_accept_prob(double prefix);

/// Random-order contention resolution: exp(-y * z) for arrival time y.
double rcrs_accept_prob(double y, double z);

/// Exact P[element i selected | i active] for the single-item OCRS run on
/// activation probabilities `z` in the given arrival order, by summing over
/// every activation pattern of the other elements. Indexed like `z`.
/// Throws SizeLimitError for more than 20 elements and
/// InfeasibleFractionalPoint when sum(z) > 1 + 1e-9.
std::vector<double> ocrs_exact_selectability(std::span<const double> z,
                                             std::span<const std::size_t> order);

}  // namespace probematch::probing
