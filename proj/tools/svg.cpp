#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace polyiso::cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kMargin = 60;
const char* const kColors[] = {"#1b6ca8", "#d1495b", "#2e933c", "#edae49", "#6c4f9c", "#444444", "#00798c", "#a05195"};

}  // namespace

std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double v) { return kMargin + (std::log10(v) - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) { return kHeight - kMargin - (std::log10(v) - y0) / (y1 - y0) * (kHeight - 2 * kMargin); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n",
      kWidth, kHeight);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", kWidth / 2, title);
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>\n", kMargin,
                     kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{} (log, 1e{:.2f} .. 1e{:.2f})</text>\n",
                     kWidth / 2, kHeight - 20, x_label, x0, x1);
  out += fmt::format(
      "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{} (log, 1e{:.2f} .. "
      "1e{:.2f})</text>\n",
      kHeight / 2, kHeight / 2, y_label, y0, y1);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
    }
    if (!points.empty()) points.pop_back();
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    out += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", kMargin + 8, kMargin + 16 * (k + 1), color, s.name);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace polyiso::cli
