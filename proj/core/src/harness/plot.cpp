#include "probematch/harness/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace probematch::harness {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

std::string histogram_svg(std::span<const double> values, const std::string& title, std::size_t bins) {
  constexpr double kW = 640, kH = 360, kLeft = 50, kRight = 20, kTop = 40, kBottom = 40;
  bins = std::max<std::size_t>(bins, 1);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight << "\" y2=\""
     << kH - kBottom << "\" stroke=\"black\"/>\n";
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn;
    const double span = *mx > *mn ? *mx - *mn : 1.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
      auto b = static_cast<std::size_t>((v - lo) / span * static_cast<double>(bins));
      ++counts[std::min(b, bins - 1)];
    }
    const double peak = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
    const double plot_w = kW - kLeft - kRight;
    const double plot_h = kH - kTop - kBottom;
    const double bar_w = plot_w / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      const double h = plot_h * static_cast<double>(counts[b]) / peak;
      os << "<rect x=\"" << num(kLeft + bar_w * static_cast<double>(b)) << "\" y=\""
         << num(kH - kBottom - h) << "\" width=\"" << num(bar_w * 0.9) << "\" height=\"" << num(h)
         << "\" fill=\"steelblue\"/>\n";
    }
    os << "<text x=\"" << kLeft << "\" y=\"" << kH - kBottom + 16
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(lo) << "</text>\n";
    os << "<text x=\"" << kW - kRight << "\" y=\"" << kH - kBottom + 16
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(lo + span)
       << "</text>\n";
    os << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << peak << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace probematch::harness
