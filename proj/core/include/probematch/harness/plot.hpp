#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace probematch::harness {

/// Static SVG histogram of `values` with `bins` equal-width bins. An empty
/// input gives an empty frame.
std::string histogram_svg(std::span<const double> values, const std::string& title,
                          std::size_t bins = 20);

}  // namespace probematch::harness
